use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub name: String,
    /// 0-based source vertex.
    pub source: usize,
    /// 0-based target vertex.
    pub target: usize,
}

/// A finite acyclic quiver. Vertices are 0-based internally and printed 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Arrows are given as `(name, source, target)` with 1-based vertices.
    pub fn new(vertices: usize, arrows: &[(&str, usize, usize)]) -> Result<Self> {
        let mut out = Vec::with_capacity(arrows.len());
        for &(name, s, t) in arrows {
            for v in [s, t] {
                if v == 0 || v > vertices {
                    return Err(Error::VertexOutOfRange { vertex: v, count: vertices });
                }
            }
            if out.iter().any(|a: &Arrow| a.name == name) {
                return Err(Error::Precondition(format!("duplicate arrow name `{name}`")));
            }
            out.push(Arrow { name: name.to_string(), source: s - 1, target: t - 1 });
        }
        let q = Quiver { vertices, arrows: out };
        q.topological_order()?;
        Ok(q)
    }

    /// The linearly oriented Dynkin quiver 1 → 2 → … → n.
    pub fn linear(n: usize) -> Self {
        let names: Vec<String> = (1..n).map(|i| format!("a{i}")).collect();
        let arrows: Vec<(&str, usize, usize)> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i + 1, i + 2)).collect();
        Quiver::new(n, &arrows).expect("linear quiver is acyclic")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn check_vertex(&self, one_based: usize) -> Result<usize> {
        if one_based == 0 || one_based > self.vertices {
            Err(Error::VertexOutOfRange { vertex: one_based, count: self.vertices })
        } else {
            Ok(one_based - 1)
        }
    }

    /// Vertices ordered so that every arrow goes forward; fails on a cycle.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.vertices;
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        if order.len() < n {
            let v = (0..n).find(|&v| indeg[v] > 0).unwrap_or(0);
            return Err(Error::CyclicQuiver(v + 1));
        }
        Ok(order)
    }
}

/// A path: a start vertex and a sequence of composable arrows (left to right).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", self.start + 1)
        } else {
            self.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("")
        }
    }
}

/// The basis of kQ: all paths, indexed so that paths ending at the same vertex
/// are contiguous (vertex order), each block sorted by length then arrows.
/// With this order the regular module's flattened coordinates are path indices.
#[derive(Clone, Debug)]
pub struct PathBasis {
    paths: Vec<Path>,
    index: HashMap<(usize, Vec<usize>), usize>,
}

impl PathBasis {
    pub fn new(q: &Quiver, max_paths: usize) -> Result<Self> {
        let mut all: Vec<Path> = (0..q.vertex_count()).map(|v| Path { start: v, end: v, arrows: vec![] }).collect();
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for (ai, a) in q.arrows().iter().enumerate() {
                    if a.source == p.end {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path { start: p.start, end: a.target, arrows });
                    }
                }
            }
            all.extend(next.iter().cloned());
            if all.len() > max_paths {
                return Err(Error::BudgetExceeded { what: "path basis".into(), needed: all.len() as u128, budget: max_paths as u128 });
            }
            frontier = next;
        }
        all.sort_by(|x, y| (x.end, x.arrows.len(), x.start, &x.arrows).cmp(&(y.end, y.arrows.len(), y.start, &y.arrows)));
        let index = all.iter().enumerate().map(|(i, p)| ((p.start, p.arrows.clone()), i)).collect();
        Ok(PathBasis { paths: all, index })
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn get(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    pub fn find(&self, start: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(&(start, arrows.to_vec())).copied()
    }

    pub fn trivial(&self, v: usize) -> usize {
        self.find(v, &[]).expect("trivial path")
    }

    /// Index of the concatenation `p · q` (p first), if composable.
    pub fn concat(&self, p: usize, q: usize) -> Option<usize> {
        let (a, b) = (&self.paths[p], &self.paths[q]);
        if a.end != b.start {
            return None;
        }
        let mut arrows = a.arrows.clone();
        arrows.extend_from_slice(&b.arrows);
        self.find(a.start, &arrows)
    }

    /// Indices of paths ending at `v`, in basis order.
    pub fn ending_at(&self, v: usize) -> Vec<usize> {
        (0..self.paths.len()).filter(|&i| self.paths[i].end == v).collect()
    }

    pub fn from_to(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.paths.len()).filter(|&i| self.paths[i].start == s && self.paths[i].end == t).collect()
    }

    pub fn starting_at(&self, s: usize) -> Vec<usize> {
        (0..self.paths.len()).filter(|&i| self.paths[i].start == s).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_cycles_and_bad_vertices() {
        assert_eq!(Quiver::new(2, &[("a", 1, 2), ("b", 2, 1)]), Err(Error::CyclicQuiver(1)));
        assert!(Quiver::new(2, &[("a", 1, 1)]).is_err());
        assert!(matches!(Quiver::new(2, &[("a", 1, 3)]), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn path_basis_of_a3() {
        let q = Quiver::linear(3);
        let pb = PathBasis::new(&q, 100).unwrap();
        assert_eq!(pb.len(), 6);
        assert_eq!(pb.ending_at(2).len(), 3);
        let a1 = pb.find(0, &[0]).unwrap();
        let a2 = pb.find(1, &[1]).unwrap();
        let a1a2 = pb.concat(a1, a2).unwrap();
        assert_eq!(pb.get(a1a2).arrows, vec![0, 1]);
        assert_eq!(pb.concat(a2, a1), None);
    }

    #[test]
    fn kronecker_has_two_parallel_paths() {
        let q = Quiver::new(2, &[("a", 1, 2), ("b", 1, 2)]).unwrap();
        let pb = PathBasis::new(&q, 100).unwrap();
        assert_eq!(pb.from_to(0, 1).len(), 2);
    }
}
