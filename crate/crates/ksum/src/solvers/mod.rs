//! Leaf k-SUM algorithms behind one interface: `solve(instance, meter)`
//! returns a witness or nothing. Each solver is a pure function of its
//! inputs, so distinct solves on distinct meters may run concurrently.
//!
//! Any of these can serve as the base case of the self-reduction; the trait
//! is public so external algorithms can be dropped in the same way.

mod bootstrap;
mod brute;
mod meet_in_middle;
mod schroeppel_shamir;
mod two_pointer;

pub use bootstrap::Bootstrap;
pub use brute::BruteForce;
pub use meet_in_middle::MeetInMiddle;
pub use schroeppel_shamir::{KsumVia4Sum, SchroeppelShamir4Sum};
pub use two_pointer::{Sorted3Sum, TwoSum};

use crate::error::{Error, Result};
use crate::meter::Meter;
use crate::types::{Instance, Numeric, Witness};

/// Descriptive metadata echoed into reports. The claims are documentation,
/// not enforced bounds (the enforced bounds live in the test suites).
#[derive(Clone, Debug)]
pub struct SolverSpec {
    pub name: String,
    pub time_claim: String,
    pub space_claim: String,
}

pub trait Solver<V: Numeric>: Send + Sync {
    fn spec(&self) -> SolverSpec;

    fn supports_arity(&self, k: usize) -> bool;

    /// Decide the instance; all reads, comparisons, additions, and scratch
    /// space go through `meter`.
    fn solve(&self, inst: &Instance<V>, meter: &Meter) -> Result<Option<Witness<V>>>;
}

impl<V: Numeric, S: Solver<V> + ?Sized> Solver<V> for &S {
    fn spec(&self) -> SolverSpec {
        (**self).spec()
    }
    fn supports_arity(&self, k: usize) -> bool {
        (**self).supports_arity(k)
    }
    fn solve(&self, inst: &Instance<V>, meter: &Meter) -> Result<Option<Witness<V>>> {
        (**self).solve(inst, meter)
    }
}

impl<V: Numeric> Solver<V> for Box<dyn Solver<V>> {
    fn spec(&self) -> SolverSpec {
        (**self).spec()
    }
    fn supports_arity(&self, k: usize) -> bool {
        (**self).supports_arity(k)
    }
    fn solve(&self, inst: &Instance<V>, meter: &Meter) -> Result<Option<Witness<V>>> {
        (**self).solve(inst, meter)
    }
}

pub(crate) fn check_arity<V: Numeric>(
    solver: &(impl Solver<V> + ?Sized),
    inst: &Instance<V>,
) -> Result<()> {
    if solver.supports_arity(inst.k()) {
        Ok(())
    } else {
        Err(Error::UnsupportedArity {
            solver: solver.spec().name,
            k: inst.k(),
        })
    }
}

/// Base-solver lookup by name. Supports `bootstrap(<inner>)` nesting, e.g.
/// `bootstrap(bootstrap(schroeppel-shamir))`.
pub fn by_name<V: Numeric>(name: &str) -> Result<Box<dyn Solver<V>>> {
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("bootstrap(") {
        let inner = rest.strip_suffix(')').ok_or_else(|| {
            Error::InvalidParameter(format!("unbalanced parentheses in solver name {name:?}"))
        })?;
        return Ok(Box::new(Bootstrap::new(by_name::<V>(inner)?)));
    }
    match name {
        "brute-force" => Ok(Box::new(BruteForce)),
        "two-sum" => Ok(Box::new(TwoSum)),
        "sorted-3sum" => Ok(Box::new(Sorted3Sum)),
        "meet-in-middle" => Ok(Box::new(MeetInMiddle::default())),
        "schroeppel-shamir" => Ok(Box::new(SchroeppelShamir4Sum::default())),
        "ksum-via-4sum" => Ok(Box::new(KsumVia4Sum::default())),
        other => Err(Error::InvalidParameter(format!(
            "unknown solver {other:?} (expected brute-force, two-sum, sorted-3sum, \
             meet-in-middle, schroeppel-shamir, ksum-via-4sum, or bootstrap(<inner>))"
        ))),
    }
}

/// The default base solver for an arity: the cheapest solver that covers it,
/// bootstrapping above four.
pub fn auto_base<V: Numeric>(k: usize) -> Result<Box<dyn Solver<V>>> {
    match k {
        0 | 1 => Err(Error::InvalidParameter(format!("arity must be >= 2, got {k}"))),
        2 => Ok(Box::new(TwoSum)),
        3 => Ok(Box::new(Sorted3Sum)),
        4 => Ok(Box::new(SchroeppelShamir4Sum::default())),
        _ => Ok(Box::new(Bootstrap::new(auto_base::<V>(k - 1)?))),
    }
}
