//! Multi-threaded drivers. Output matches the sequential versions exactly.

use rayon::prelude::*;
use rayon::ThreadPool;

use knotclass_core::coloring::fingerprint;
use knotclass_core::enumeration::{enumerate_slice, first_choices, Filters};
use knotclass_core::pipeline::{
    assemble, components, composite_suspects, find_connected_sum, group_items, validate, ClassifyError,
};
use knotclass_core::{ClassificationReport, ClassifyConfig, Notation};

/// Thread count from `KNOT_THREADS`; unset, empty or 0 means automatic.
pub fn threads_from_env() -> Result<usize, String> {
    match std::env::var("KNOT_THREADS") {
        Ok(s) if !s.trim().is_empty() => {
            s.trim().parse().map_err(|_| format!("KNOT_THREADS must be a non-negative integer, got {s:?}"))
        }
        _ => Ok(0),
    }
}

pub fn pool(threads: usize) -> ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

/// Projections with `n` crossings, slices of the candidate space in parallel.
pub fn enumerate_projections(n: usize) -> Vec<Notation> {
    if n == 0 {
        return Vec::new();
    }
    first_choices(n).into_par_iter().flat_map_iter(|c| enumerate_slice(n, c, Filters::ALL)).collect()
}

/// Same report as [`knotclass_core::classify`], computed on the current pool.
pub fn classify(n_max: usize, config: &ClassifyConfig) -> Result<ClassificationReport, ClassifyError> {
    validate(n_max, config)?;
    let mut items = vec![Notation::empty()];
    for n in 1..=n_max {
        items.extend(enumerate_projections(n));
    }
    let keyed = items
        .into_par_iter()
        .map(|v| fingerprint(&v, &config.schemes).map(|fp| (v, fp)))
        .collect::<Result<Vec<_>, _>>()?;
    let groups = group_items(keyed);
    let budget_n = config.budget_n_for(n_max);

    // Large groups first so the long searches start early.
    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.sort_by_key(|&g| std::cmp::Reverse(groups[g].items.len()));
    let mut partitions: Vec<_> = order
        .par_iter()
        .map(|&g| (g, groups[g].dedupe(budget_n, config.budget_nodes)))
        .collect();
    partitions.sort_by_key(|(g, _)| *g);
    let partitions: Vec<_> = partitions.into_iter().map(|(_, p)| p).collect();

    let comps = components(&groups, &partitions);
    let suspects = composite_suspects(&comps);
    let found = suspects
        .par_iter()
        .map(|&k| find_connected_sum(&comps[k].representative, &config.schemes, budget_n, config.budget_nodes))
        .collect::<Result<Vec<_>, _>>()?;
    let mut sums = vec![None; comps.len()];
    for (&k, s) in suspects.iter().zip(found) {
        sums[k] = s;
    }
    Ok(assemble(n_max, config, &comps, &sums))
}
