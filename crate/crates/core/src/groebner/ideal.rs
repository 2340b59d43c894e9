use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyalg::{MonomialOrder, Polynomial, VariableRing};

/// A polynomial ideal given by generators; zero generators are dropped.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<VariableRing>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Arc<VariableRing>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.ring().names() != ring.names() {
                return Err(Error::MalformedInput(format!(
                    "generator {g} does not live in {ring}"
                )));
            }
        }
        Ok(Self {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ring: &Arc<VariableRing>) -> Self {
        Self {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Arc<VariableRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// The same generators re-expressed in the sub-ring spanned by `vars`
    /// (in that order). Fails if a generator uses any other variable.
    pub fn restrict_to(&self, vars: &[usize]) -> Result<Ideal> {
        let sub = self.ring.subring(vars)?;
        let mut map = vec![None; self.ring.arity()];
        for (k, &v) in vars.iter().enumerate() {
            map[v] = Some(k);
        }
        let order = MonomialOrder::grevlex(sub.arity());
        let gens = self
            .generators
            .iter()
            .map(|g| g.map_ring(&sub, &order, &map))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&sub, gens)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(|p| p.to_string()).collect();
        write!(f, "<{}>", g.join(", "))
    }
}
