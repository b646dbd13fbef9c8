use rayon::prelude::*;

use crate::decorated::{DecoratedValue, ExtNat};
use crate::dimtype::{DimensionType, Prime};

use super::{
    check_decomposition_index, check_map_indices, decomposition_feasible, map_feasible, prime_list,
    ExoticError, WitnessCertificate,
};

/// Which primes may carry values different from the default.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum PrimePolicy {
    #[default]
    Uniform,
    Exceptions(Vec<Prime>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_value: u64,
    pub prime_policy: PrimePolicy,
    pub realizable_only: bool,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl SearchBounds {
    pub fn uniform(max_value: u64) -> Self {
        SearchBounds {
            max_value,
            prime_policy: PrimePolicy::Uniform,
            realizable_only: true,
            workers: None,
        }
    }

    fn validated(&self) -> Result<Vec<Prime>, ExoticError> {
        if self.max_value < 1 {
            return Err(ExoticError::Bounds("max value must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(ExoticError::Bounds("worker count must be at least 1".into()));
        }
        match &self.prime_policy {
            PrimePolicy::Uniform => Ok(Vec::new()),
            PrimePolicy::Exceptions(ps) => prime_list(ps),
        }
    }
}

/// Decorated values with base at most `max` that can sit beside rational value `q`.
fn local_choices(q: u64, max: u64) -> Vec<DecoratedValue> {
    let mut out = vec![DecoratedValue::plain(q)];
    for v in 1..=max {
        out.push(DecoratedValue::minus(v));
        out.push(DecoratedValue::plus(v));
    }
    out.sort();
    out
}

/// All dimension types within the bounds, in canonical order.
pub fn enumerate_types(bounds: &SearchBounds) -> Result<Vec<DimensionType>, ExoticError> {
    let primes = bounds.validated()?;
    let mut out = Vec::new();
    for q in 0..=bounds.max_value {
        let choices = local_choices(q, bounds.max_value);
        for &default in &choices {
            // Odometer over the exception primes.
            let mut idx = vec![0usize; primes.len()];
            loop {
                let exceptions = primes.iter().zip(&idx).map(|(&p, &i)| (p, choices[i]));
                let d = DimensionType::new(ExtNat::Finite(q), default, exceptions).expect("enumerated type is valid");
                if !bounds.realizable_only || d.is_realizable() {
                    out.push(d);
                }
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < choices.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
        }
    }
    out.sort_by_key(DimensionType::sort_key);
    out.dedup();
    Ok(out)
}

fn run_pairs<F>(bounds: &SearchBounds, feasible: F) -> Result<Vec<WitnessCertificate>, ExoticError>
where
    F: Fn(&DimensionType, &DimensionType) -> WitnessCertificate + Sync,
{
    let types = enumerate_types(bounds)?;
    let scan = || {
        types
            .par_iter()
            .flat_map_iter(|d1| {
                types
                    .iter()
                    .map(|d2| feasible(d1, d2))
                    .filter(WitnessCertificate::is_valid)
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    };
    let mut found = match bounds.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| ExoticError::Bounds(e.to_string()))?
            .install(scan),
        None => scan(),
    };
    found.sort_by_cached_key(|c| (c.d1.sort_key(), c.d2.sort_key()));
    Ok(found)
}

/// Every ordered pair within the bounds that certifies a decomposition in dimension `n`.
pub fn search_decomposition(n: u64, bounds: &SearchBounds) -> Result<Vec<WitnessCertificate>, ExoticError> {
    check_decomposition_index(n)?;
    run_pairs(bounds, |d1, d2| decomposition_feasible(n, d1, d2).expect("n checked"))
}

/// Every ordered pair within the bounds that certifies the map problem `(n, m)`.
pub fn search_map(n: u64, m: u64, bounds: &SearchBounds) -> Result<Vec<WitnessCertificate>, ExoticError> {
    check_map_indices(n, m, 4, 2)?;
    run_pairs(bounds, |d1, d2| map_feasible(n, m, d1, d2).expect("indices checked"))
}
