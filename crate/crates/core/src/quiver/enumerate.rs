use std::sync::Arc;

use super::paths::Quiver;
use super::rep::Rep;
use crate::budget::Budget;
use crate::error::Result;
use crate::linalg::{Field, Mat};

/// Dimension vectors with entries summing to at most `max_total`, in
/// increasing total then lexicographic order.
pub fn dimension_vectors(n: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for total in 0..=max_total {
        let mut cur = vec![0; n];
        compositions(n, total, 0, &mut cur, &mut out);
    }
    out
}

fn compositions(n: usize, left: usize, pos: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if pos + 1 >= n {
        if n > 0 {
            cur[n - 1] = left;
            out.push(cur.clone());
        } else if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for d in (0..=left).rev() {
        cur[pos] = d;
        compositions(n, left - d, pos + 1, cur, out);
    }
}

/// Every representation with the given dimension vector (all arrow matrices).
pub fn reps_with_dims(field: Field, q: &Arc<Quiver>, dims: &[usize], budget: Budget) -> Result<Vec<Rep>> {
    let shapes: Vec<(usize, usize)> = q.arrows().iter().map(|a| (dims[a.target], dims[a.source])).collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    budget.check("representation enumeration", field.space_size(entries))?;
    let mut out = Vec::new();
    for v in field.all_vectors(entries) {
        let mut off = 0;
        let maps = shapes
            .iter()
            .map(|&(r, c)| {
                let m = Mat::from_fn(field, r, c, |i, j| v[off + i * c + j]);
                off += r * c;
                m
            })
            .collect();
        out.push(Rep::new(field, q.clone(), dims.to_vec(), maps)?);
    }
    Ok(out)
}

/// Every representation of total dimension at most `max_total`.
pub fn all_reps(field: Field, q: &Arc<Quiver>, max_total: usize, budget: Budget) -> Result<Vec<Rep>> {
    let mut out = Vec::new();
    for dims in dimension_vectors(q.vertex_count(), max_total) {
        out.extend(reps_with_dims(field, q, &dims, budget)?);
        budget.check("representation enumeration", out.len() as u128)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_for_a2() {
        let f = Field::new(2).unwrap();
        let q = Arc::new(Quiver::linear(2));
        // dims with a+b ≤ 2: (0,0) (1,0) (0,1) (2,0) (1,1) (0,2); (1,1) has 2 maps
        let all = all_reps(f, &q, 2, Budget::default()).unwrap();
        assert_eq!(all.len(), 7);
        assert_eq!(dimension_vectors(3, 1).len(), 4);
    }
}
