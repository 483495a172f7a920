use crate::error::{MatroidError, Result};
use crate::ground::{ElementSet, MAX_ELEMENTS};
use crate::oracle::Independence;

/// The uniform matroid `U(r, n)`: every set of size at most `r` is independent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniformRep {
    n: usize,
    r: usize,
}

impl UniformRep {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge(n));
        }
        if r > n {
            return Err(MatroidError::Domain(format!("rank {r} exceeds {n} elements")));
        }
        Ok(UniformRep { n, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }
}

impl Independence for UniformRep {
    fn len(&self) -> usize {
        self.n
    }

    fn is_independent(&self, set: ElementSet) -> bool {
        set.len() <= self.r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinality_rule() {
        let u = UniformRep::new(4, 2).unwrap();
        assert!(u.is_independent(ElementSet::from_indices([0, 1])));
        assert!(!u.is_independent(ElementSet::from_indices([0, 1, 2])));
        let zero = UniformRep::new(5, 0).unwrap();
        assert!(zero.is_independent(ElementSet::EMPTY));
        assert!(ElementSet::full(5)
            .subsets()
            .skip(1)
            .all(|s| !zero.is_independent(s)));
        assert!(UniformRep::new(2, 3).is_err());
    }
}
