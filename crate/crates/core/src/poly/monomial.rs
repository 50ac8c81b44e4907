use std::cmp::Ordering;

/// Exponent vector, one entry per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(self.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Weighted graded reverse lexicographic comparison.
pub(crate) fn grevlex_cmp(weights: &[u32], a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().zip(weights).map(|(e, w)| e * w).sum();
    let db: u32 = b.iter().zip(weights).map(|(e, w)| e * w).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        let w = [1, 1, 1];
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(grevlex_cmp(&w, &[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(grevlex_cmp(&w, &[2, 0, 0], &[0, 2, 0]), Ordering::Greater);
        assert_eq!(grevlex_cmp(&w, &[0, 0, 3], &[1, 0, 0]), Ordering::Greater);
    }

    #[test]
    fn weights_dominate() {
        let w = [1, 2];
        assert_eq!(grevlex_cmp(&w, &[0, 1], &[1, 0]), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exponents(vec![1, 2, 0]);
        let b = Monomial::from_exponents(vec![2, 1, 1]);
        assert_eq!(a.lcm(&b).exponents(), &[2, 2, 1]);
        assert!(a.divides(&a.lcm(&b)));
        assert_eq!(a.quotient_of(&a.lcm(&b)).exponents(), &[1, 0, 1]);
        assert!(!a.is_coprime(&b));
    }
}
