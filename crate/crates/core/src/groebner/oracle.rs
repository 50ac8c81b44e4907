//! Membership decided by exact linear algebra on one graded piece, without
//! any Groebner machinery.

use std::collections::HashMap;

use super::Ideal;
use crate::poly::{Monomial, Polynomial};
use crate::Rational;

/// Sparse row sorted by column.
type Row = Vec<(usize, Rational)>;

/// Reduced row-echelon form of the span of `{m·g : deg(m·g) = d}` for one
/// ideal. Keeping every pivot row reduced against the others keeps the
/// entries small and makes reduction a single pass.
pub struct LinearSpan {
    degree: u32,
    columns: HashMap<Monomial, usize>,
    /// Pivot column -> row with coefficient 1 there and 0 in every other
    /// pivot column.
    pivots: HashMap<usize, Row>,
    /// The span is the whole graded piece.
    full: bool,
}

impl LinearSpan {
    pub fn new(ideal: &Ideal, degree: u32) -> LinearSpan {
        let ring = ideal.ring();
        let columns: HashMap<Monomial, usize> =
            ring.monomials_of_degree(degree).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut span = LinearSpan { degree, columns, pivots: HashMap::new(), full: false };
        let mut rows = Vec::new();
        for g in ideal.generators() {
            let Some(e) = g.degree() else { continue };
            if e > degree {
                continue;
            }
            for m in ring.monomials_of_degree(degree - e) {
                rows.push(span.row_of(&g.mul_term(&m, &Rational::one())));
            }
        }
        // Rows independent modulo a prime are independent over Q, so a full
        // modular rank settles the whole graded piece. Otherwise those rows
        // seed the exact echelon form and every other row is checked
        // against it exactly.
        let (selected, rank) = modular::independent_rows(&rows, span.columns.len());
        if rank == span.columns.len() {
            span.full = true;
            return span;
        }
        let mut rest = Vec::new();
        let mut chosen = selected.into_iter().peekable();
        for (i, row) in rows.into_iter().enumerate() {
            if chosen.peek() == Some(&i) {
                chosen.next();
                span.insert(row);
            } else {
                rest.push(row);
            }
        }
        for row in rest {
            span.insert(row);
        }
        span
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Dimension of the graded piece of the ideal.
    pub fn rank(&self) -> usize {
        if self.full {
            self.columns.len()
        } else {
            self.pivots.len()
        }
    }

    fn row_of(&self, p: &Polynomial) -> Row {
        let mut row: Row = p.terms().iter().map(|(m, c)| (self.columns[m], c.clone())).collect();
        row.sort_by_key(|t| t.0);
        row
    }

    /// The row minus its projection onto the pivot rows; supported on
    /// non-pivot columns only.
    fn residue(&self, row: &Row) -> Row {
        let mut acc: Vec<Rational> = vec![Rational::zero(); self.columns.len()];
        for (k, c) in row {
            acc[*k] = c.clone();
        }
        for (k, c) in row {
            if let Some(piv) = self.pivots.get(k) {
                for (j, x) in piv {
                    acc[*j] -= &(c * x);
                }
            }
        }
        acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn insert(&mut self, row: Row) {
        let res = self.residue(&row);
        let Some((lead, c)) = res.first().cloned() else { return };
        let inv = c.recip();
        let new: Row = res.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        for piv in self.pivots.values_mut() {
            if let Some(pos) = piv.iter().position(|(k, _)| *k == lead) {
                let f = piv[pos].1.clone();
                *piv = axpy(piv, &f, &new);
            }
        }
        self.pivots.insert(lead, new);
    }

    /// Whether a homogeneous polynomial of this degree lies in the span.
    pub fn contains(&self, p: &Polynomial) -> bool {
        if p.is_zero() {
            return true;
        }
        if p.degree() != Some(self.degree) {
            return false;
        }
        self.full || self.residue(&self.row_of(p)).is_empty()
    }
}

mod modular {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    use super::Row;

    const P: u64 = (1 << 61) - 1;

    fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(a: u64) -> u64 {
        pow(a, P - 2)
    }

    fn reduce(x: &BigInt) -> u64 {
        let m = BigInt::from(P);
        let r = ((x % &m) + &m) % &m;
        r.to_u64().expect("residue fits")
    }

    /// Indices (ascending) of a maximal set of rows independent modulo the
    /// prime, and its size. Rows whose denominators vanish modulo the prime
    /// are never selected, which only weakens the shortcut.
    pub(super) fn independent_rows(rows: &[Row], ncols: usize) -> (Vec<usize>, usize) {
        let mut pivots: Vec<Option<Vec<u64>>> = vec![None; ncols];
        let mut selected = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if selected.len() == ncols {
                break;
            }
            let mut acc = vec![0u64; ncols];
            let mut ok = true;
            for (k, c) in row {
                let d = reduce(c.denom());
                if d == 0 {
                    ok = false;
                    break;
                }
                acc[*k] = mul(reduce(c.numer()), inv(d));
            }
            if !ok {
                continue;
            }
            for col in 0..ncols {
                if acc[col] == 0 {
                    continue;
                }
                match &pivots[col] {
                    Some(piv) => {
                        let f = acc[col];
                        for j in col..ncols {
                            if piv[j] != 0 {
                                acc[j] = (acc[j] + P - mul(f, piv[j])) % P;
                            }
                        }
                    }
                    None => {
                        let s = inv(acc[col]);
                        for x in acc.iter_mut().skip(col) {
                            *x = mul(*x, s);
                        }
                        pivots[col] = Some(acc);
                        selected.push(i);
                        break;
                    }
                }
            }
        }
        let rank = selected.len();
        (selected, rank)
    }
}

/// `row - c·piv`, both sorted by column.
fn axpy(row: &Row, c: &Rational, piv: &Row) -> Row {
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let take_row = j >= piv.len() || (i < row.len() && row[i].0 < piv[j].0);
        let take_piv = i >= row.len() || (j < piv.len() && piv[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((piv[j].0, -(c * &piv[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(c * &piv[j].1);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// True iff the homogeneous polynomial `p` is a rational combination of
/// monomial multiples of the generators in its own degree.
pub fn member_linear_oracle(p: &Polynomial, ideal: &Ideal) -> bool {
    if p.is_zero() {
        return true;
    }
    let Some(d) = p.degree() else { return false };
    LinearSpan::new(ideal, d).contains(p)
}
