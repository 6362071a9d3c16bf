use std::collections::HashSet;

use super::rep::{Rep, Subrep};
use crate::budget::Budget;
use crate::error::Result;
use crate::linalg::Subspace;

/// Cyclic subrepresentations generated by single homogeneous vectors, one per
/// projective point of each `M_v`, deduplicated.
pub fn cyclic_submodules(m: &Rep, budget: Budget) -> Result<Vec<Subrep>> {
    let f = m.field();
    budget.check("submodule enumeration", f.space_size(m.total_dim()))?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for v in 0..m.dims().len() {
        for x in f.all_vectors(m.dim(v)) {
            // one representative per line: first nonzero coordinate is 1
            if x.iter().find(|&&c| c != 0) != Some(&1) {
                continue;
            }
            let mut spaces: Vec<Subspace> = m.dims().iter().map(|&d| Subspace::zero(f, d)).collect();
            spaces[v] = Subspace::span(f, m.dim(v), [x]);
            let c = m.arrow_closure(spaces);
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Every subrepresentation of `M`, including `0` and `M`, sorted by total
/// dimension (ties in discovery order).
pub fn all_submodules(m: &Rep, budget: Budget) -> Result<Vec<Subrep>> {
    let cyclic = cyclic_submodules(m, budget)?;
    let zero = m.zero_sub();
    let mut seen: HashSet<Subrep> = HashSet::from([zero.clone()]);
    let mut out = vec![zero];
    let mut i = 0;
    while i < out.len() {
        let s = out[i].clone();
        for c in &cyclic {
            if s.contains(c) {
                continue;
            }
            let t = s.sum(c);
            if seen.insert(t.clone()) {
                budget.check("submodule enumeration", out.len() as u128 + 1)?;
                out.push(t);
            }
        }
        i += 1;
    }
    out.sort_by_key(|s| s.total_dim());
    Ok(out)
}

/// Essentiality of a subrepresentation: in finite dimension, `U` meets every
/// nonzero submodule iff it contains the socle.
pub fn is_essential(m: &Rep, sub: &Subrep) -> bool {
    sub.contains(&m.socle())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::quiver::{PathAlgebra, Quiver};

    #[test]
    fn submodule_counts() {
        let a = PathAlgebra::new(Field::new(2).unwrap(), Quiver::linear(2)).unwrap();
        assert_eq!(all_submodules(&a.projective(0).unwrap(), Budget::default()).unwrap().len(), 3);
        assert_eq!(all_submodules(&a.simple(0).unwrap(), Budget::default()).unwrap().len(), 2);
        let zero = Rep::zero(a.field(), a.quiver().clone());
        assert_eq!(all_submodules(&zero, Budget::default()).unwrap().len(), 1);
    }

    #[test]
    fn refuses_beyond_budget() {
        let a = PathAlgebra::new(Field::new(2).unwrap(), Quiver::linear(2)).unwrap();
        let r = a.regular().unwrap();
        assert!(matches!(all_submodules(&r, Budget::new(4)), Err(crate::Error::BudgetExceeded { .. })));
    }
}
