use injspec_core::algebra::FdAlgebra;
use injspec_core::{Budget, Result};

pub fn subscript(n: usize) -> String {
    n.to_string().chars().map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap()).collect()
}

/// The algebra as a sum of blocks, e.g. `k ⊕ M₂(k)`. A block is named
/// `M_r(k)` when it is semisimple with centre `k`, `simple(d)` when it is
/// semisimple with a larger centre, and `block(d)` otherwise.
pub fn describe_algebra(alg: &FdAlgebra, k: &str, budget: Budget) -> Result<String> {
    if alg.dim() == 0 {
        return Ok("0".into());
    }
    let mut blocks = Vec::new();
    for e in alg.primitive_central_idempotents(budget)? {
        let b = alg.corner(&e)?;
        let d = b.dim();
        let r = (1..=d).find(|r| r * r >= d).unwrap_or(1);
        let label = if r * r == d && b.center().dim() == 1 && b.is_semisimple(budget)? {
            if r == 1 {
                k.to_string()
            } else {
                format!("M{}({k})", subscript(r))
            }
        } else if b.is_semisimple(budget)? {
            format!("simple({d})")
        } else {
            format!("block({d})")
        };
        blocks.push((d, label));
    }
    blocks.sort();
    Ok(blocks.into_iter().map(|(_, l)| l).collect::<Vec<_>>().join(" ⊕ "))
}
