use super::hom::MapSystem;
use super::path_algebra::PathAlgebra;
use super::rep::{Rep, RepMap};
use crate::error::{Error, Result};

/// Injective hull `E(M) = ⊕_v E_v^{m_v}` where `soc(M) ≅ ⊕_v S_v^{m_v}`, with
/// an embedding extending the socle identification.
pub fn injective_hull(alg: &PathAlgebra, m: &Rep) -> Result<(Rep, RepMap)> {
    let soc = m.socle();
    let mut parts = Vec::new();
    // (vertex, socle basis vector of M) for each summand
    let mut targets = Vec::new();
    for v in 0..alg.vertex_count() {
        for b in soc.space(v).basis() {
            parts.push(alg.injective(v)?);
            targets.push((v, b.clone()));
        }
    }
    let e = if parts.is_empty() {
        Rep::zero(alg.field(), alg.quiver().clone())
    } else {
        Rep::direct_sum(&parts.iter().collect::<Vec<_>>())?
    };
    let mut sys = MapSystem::new(m, &e)?;
    // E_v has a one-dimensional socle spanned by the trivial path, which is the
    // only basis vector of (E_v)_v; copies are laid out in summand order.
    for (k, (v, b)) in targets.iter().enumerate() {
        let before_v: usize = parts[..k].iter().map(|p| p.dim(*v)).sum();
        let mut y = vec![0; e.dim(*v)];
        y[before_v] = 1;
        sys.require_value(*v, b, &y);
    }
    let emb = sys
        .solve()
        .ok_or_else(|| Error::invariant("injective hull extension", "extension system is inconsistent"))?;
    if !emb.is_injective() {
        return Err(Error::invariant("injective hull embedding", "extension of the socle embedding has a kernel"));
    }
    Ok((e, emb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::quiver::Quiver;

    #[test]
    fn hulls_over_a2() {
        let a = PathAlgebra::new(Field::new(2).unwrap(), Quiver::linear(2)).unwrap();
        let (e, emb) = injective_hull(&a, &a.simple(1).unwrap()).unwrap();
        assert_eq!(e, a.injective(1).unwrap());
        assert!(emb.is_injective());
        let (e, _) = injective_hull(&a, &a.simple(0).unwrap()).unwrap();
        assert_eq!(e.dims(), &[1, 0]);
        let (e, emb) = injective_hull(&a, &a.regular().unwrap()).unwrap();
        assert_eq!(e.dims(), &[2, 2]);
        assert!(emb.is_injective());
    }
}
