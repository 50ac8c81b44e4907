use crate::poly::{GradedRing, Monomial};

/// Monomial order used by a Groebner computation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weighted graded reverse lexicographic order in declared variable order.
    Grevlex,
    /// Block order: the listed variables (by index) form a first block that
    /// dominates the remaining ones; each block is ordered by grevlex.
    Elimination(Vec<usize>),
}

impl MonomialOrder {
    /// Elimination order for the named variables.
    pub fn eliminating(ring: &GradedRing, names: &[&str]) -> Option<MonomialOrder> {
        let idx = names.iter().map(|n| ring.index_of(n)).collect::<Option<Vec<_>>>()?;
        Some(MonomialOrder::Elimination(idx))
    }
}

/// Monomial encoded so that the derived lexicographic `Ord` is the monomial
/// order: for each block its weighted degree followed by the negated
/// exponents of its variables in reverse order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Key(Box<[i32]>);

#[derive(Debug, Clone)]
pub(crate) struct OrderCtx {
    nvars: usize,
    weights: Vec<u32>,
    /// Key slot of each variable.
    slot: Vec<usize>,
    /// Key slot of each block degree, with the variables of that block.
    blocks: Vec<(usize, Vec<usize>)>,
    len: usize,
}

impl OrderCtx {
    pub fn new(ring: &GradedRing, order: &MonomialOrder) -> OrderCtx {
        let n = ring.nvars();
        let groups: Vec<Vec<usize>> = match order {
            MonomialOrder::Grevlex => vec![(0..n).collect()],
            MonomialOrder::Elimination(elim) => {
                let mut first: Vec<usize> = elim.clone();
                first.sort_unstable();
                first.dedup();
                let rest: Vec<usize> = (0..n).filter(|i| !first.contains(i)).collect();
                [first, rest].into_iter().filter(|b| !b.is_empty()).collect()
            }
        };
        let mut slot = vec![0; n];
        let mut blocks = Vec::new();
        let mut pos = 0;
        for g in groups {
            let dpos = pos;
            pos += 1;
            for &v in g.iter().rev() {
                slot[v] = pos;
                pos += 1;
            }
            blocks.push((dpos, g));
        }
        OrderCtx { nvars: n, weights: ring.weights().to_vec(), slot, blocks, len: pos }
    }

    pub fn encode(&self, m: &Monomial) -> Key {
        let e = m.exponents();
        let mut k = vec![0i32; self.len];
        for (dpos, vars) in &self.blocks {
            let mut d = 0;
            for &v in vars {
                k[self.slot[v]] = -(e[v] as i32);
                d += (e[v] * self.weights[v]) as i32;
            }
            k[*dpos] = d;
        }
        Key(k.into_boxed_slice())
    }

    pub fn decode(&self, k: &Key) -> Monomial {
        Monomial::from_exponents((0..self.nvars).map(|v| (-k.0[self.slot[v]]) as u32).collect())
    }

    pub fn degree(&self, k: &Key) -> u32 {
        self.blocks.iter().map(|(d, _)| k.0[*d] as u32).sum()
    }

    pub fn mul(&self, a: &Key, b: &Key) -> Key {
        Key(a.0.iter().zip(b.0.iter()).map(|(x, y)| x + y).collect())
    }

    /// Whether `a` divides `b`.
    pub fn divides(&self, a: &Key, b: &Key) -> bool {
        self.slot.iter().all(|&s| a.0[s] >= b.0[s])
    }

    /// `b / a`, assuming `a` divides `b`.
    pub fn quotient(&self, a: &Key, b: &Key) -> Key {
        Key(b.0.iter().zip(a.0.iter()).map(|(x, y)| x - y).collect())
    }

    pub fn lcm(&self, a: &Key, b: &Key) -> Key {
        let mut k = vec![0i32; self.len];
        for (dpos, vars) in &self.blocks {
            let mut d = 0;
            for &v in vars {
                let s = self.slot[v];
                let e = a.0[s].min(b.0[s]);
                k[s] = e;
                d += -e * self.weights[v] as i32;
            }
            k[*dpos] = d;
        }
        Key(k.into_boxed_slice())
    }

    pub fn coprime(&self, a: &Key, b: &Key) -> bool {
        self.slot.iter().all(|&s| a.0[s] == 0 || b.0[s] == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_order_matches_grevlex() {
        let r = GradedRing::new([("x", 1), ("y", 2), ("z", 1)]).unwrap();
        let ctx = OrderCtx::new(&r, &MonomialOrder::Grevlex);
        let monos = r.monomials_of_degree(4);
        for a in &monos {
            for b in &monos {
                let want = crate::poly::grevlex_cmp(r.weights(), a.exponents(), b.exponents());
                assert_eq!(ctx.encode(a).cmp(&ctx.encode(b)), want);
            }
            assert_eq!(&ctx.decode(&ctx.encode(a)), a);
        }
    }

    #[test]
    fn elimination_block_dominates() {
        let r = GradedRing::new([("x", 1), ("y", 1), ("t", 1)]).unwrap();
        let ctx = OrderCtx::new(&r, &MonomialOrder::Elimination(vec![2]));
        let t = ctx.encode(&Monomial::from_exponents(vec![0, 0, 1]));
        let x2 = ctx.encode(&Monomial::from_exponents(vec![2, 0, 0]));
        assert!(t > x2);
        let xt = ctx.encode(&Monomial::from_exponents(vec![1, 0, 1]));
        let l = ctx.lcm(&t, &x2);
        assert_eq!(ctx.decode(&l).exponents(), &[2, 0, 1]);
        assert!(ctx.divides(&xt, &l));
        assert_eq!(ctx.degree(&l), 3);
    }
}
