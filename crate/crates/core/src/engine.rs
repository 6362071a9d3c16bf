use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::budget::Budget;
use crate::error::Result;
use crate::linalg::Field;
use crate::points::PointSet;
use crate::quiver::{injective_hull, PathAlgebra, Quiver, Rep, RepMap};
use crate::torsion::{LocalizedRing, TorsionClass};

/// The path-algebra engine: kQ together with its standard modules and a cache
/// of localized rings keyed by cogenerating point set. Safe to share across
/// threads; the cache only ever stores fully computed values.
#[derive(Debug)]
pub struct QuiverEngine {
    alg: PathAlgebra,
    regular: Rep,
    simples: Vec<Rep>,
    injectives: Vec<Rep>,
    budget: Budget,
    rings: RwLock<HashMap<PointSet, Arc<LocalizedRing>>>,
}

impl QuiverEngine {
    pub fn new(field: Field, quiver: Quiver, budget: Budget) -> Result<Self> {
        let alg = PathAlgebra::new(field, quiver)?;
        let n = alg.vertex_count();
        if n > 64 {
            return Err(crate::Error::Precondition(format!("{n} vertices; at most 64 supported")));
        }
        let regular = alg.regular()?;
        let simples = (0..n).map(|i| alg.simple(i)).collect::<Result<_>>()?;
        let injectives = (0..n).map(|i| alg.injective(i)).collect::<Result<_>>()?;
        Ok(QuiverEngine { alg, regular, simples, injectives, budget, rings: RwLock::new(HashMap::new()) })
    }

    /// `k A_n` with linear orientation, default budget.
    pub fn linear(p: u32, n: usize) -> Result<Self> {
        QuiverEngine::new(Field::new(p)?, Quiver::linear(n), Budget::default())
    }

    pub fn algebra(&self) -> &PathAlgebra {
        &self.alg
    }
    pub fn field(&self) -> Field {
        self.alg.field()
    }
    pub fn quiver(&self) -> &Arc<Quiver> {
        self.alg.quiver()
    }
    pub fn n(&self) -> usize {
        self.alg.vertex_count()
    }
    pub fn budget(&self) -> Budget {
        self.budget
    }
    pub fn regular(&self) -> &Rep {
        &self.regular
    }
    pub fn simple(&self, i: usize) -> &Rep {
        &self.simples[i]
    }
    pub fn injective(&self, i: usize) -> &Rep {
        &self.injectives[i]
    }
    pub fn injectives(&self) -> &[Rep] {
        &self.injectives
    }
    pub fn projective(&self, i: usize) -> Result<Rep> {
        self.alg.projective(i)
    }
    pub fn zero_module(&self) -> Rep {
        Rep::zero(self.field(), self.quiver().clone())
    }

    pub fn hull(&self, m: &Rep) -> Result<(Rep, RepMap)> {
        injective_hull(&self.alg, m)
    }

    pub fn all_points(&self) -> PointSet {
        PointSet::full(self.n())
    }

    /// The localized ring at `T`, memoized.
    pub fn localized_ring(&self, t: TorsionClass) -> Result<Arc<LocalizedRing>> {
        if let Some(r) = self.rings.read().expect("cache lock").get(&t.cogen()) {
            return Ok(r.clone());
        }
        let ring = Arc::new(LocalizedRing::compute(self, t)?);
        let mut cache = self.rings.write().expect("cache lock");
        Ok(cache.entry(t.cogen()).or_insert(ring).clone())
    }
}
