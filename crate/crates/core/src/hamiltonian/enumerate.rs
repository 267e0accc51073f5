use super::{four_subsets, HamiltonianSpec};
use crate::error::{Error, Result};
use crate::majorana::masks_commute;
use rayon::prelude::*;
use std::collections::BTreeSet;

/// A set of 4-subsets in canonical (lexicographically minimal) form.
pub type Structure = Vec<[usize; 4]>;

/// Orbit representatives with and without the all-fermions-touched constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub n_fermions: usize,
    pub n_terms: usize,
    /// Orbits whose supports jointly cover every fermion.
    pub covering: Vec<Structure>,
    /// Every orbit of pairwise-commuting term sets.
    pub all: Vec<Structure>,
    /// Raw commuting sets visited before quotienting by relabeling.
    pub raw_count: usize,
}

/// Canonical orbit representatives of `n_terms` pairwise-commuting 4-body terms that
/// jointly touch all `n_fermions` fermions.
pub fn enumerate_commuting_structures(n_fermions: usize, n_terms: usize) -> Result<Vec<Structure>> {
    Ok(enumerate_commuting_report(n_fermions, n_terms)?.covering)
}

/// Full enumeration, reporting both constrained and unconstrained orbit lists.
pub fn enumerate_commuting_report(n_fermions: usize, n_terms: usize) -> Result<EnumerationReport> {
    if n_fermions > 8 || n_terms > 6 {
        return Err(Error::BudgetExceeded {
            n_fermions,
            n_terms,
        });
    }
    let subsets = four_subsets(n_fermions);
    let masks: Vec<u32> = subsets
        .iter()
        .map(|s| s.iter().fold(0u32, |m, &i| m | 1 << (i - 1)))
        .collect();
    let mut raw = Vec::new();
    let mut current = Vec::with_capacity(n_terms);
    if n_terms > 0 {
        extend(&masks, n_terms, 0, &mut current, &mut raw);
    }
    let perms = permutations(n_fermions);
    // image[p][k] = index of subset k after relabeling by perm p
    let index_of = |mask: u32| masks.iter().position(|&m| m == mask).expect("4-subset");
    let images: Vec<Vec<u16>> = perms
        .iter()
        .map(|p| {
            masks
                .iter()
                .map(|&m| {
                    let img = (0..n_fermions)
                        .filter(|&b| m >> b & 1 == 1)
                        .fold(0u32, |acc, b| acc | 1 << p[b]);
                    index_of(img) as u16
                })
                .collect()
        })
        .collect();
    let canon: Vec<(Vec<u16>, bool)> = raw
        .par_iter()
        .map(|set: &Vec<u16>| {
            let mut best: Option<Vec<u16>> = None;
            for img in &images {
                let mut v: Vec<u16> = set.iter().map(|&k| img[k as usize]).collect();
                v.sort_unstable();
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
            let cover = set.iter().fold(0u32, |a, &k| a | masks[k as usize]);
            (
                best.unwrap_or_default(),
                cover.count_ones() as usize == n_fermions,
            )
        })
        .collect();
    let mut all = BTreeSet::new();
    let mut covering = BTreeSet::new();
    for (c, cov) in canon {
        if cov {
            covering.insert(c.clone());
        }
        all.insert(c);
    }
    let to_structure =
        |v: Vec<u16>| -> Structure { v.iter().map(|&k| subsets[k as usize]).collect() };
    Ok(EnumerationReport {
        n_fermions,
        n_terms,
        covering: covering.into_iter().map(to_structure).collect(),
        all: all.into_iter().map(to_structure).collect(),
        raw_count: raw.len(),
    })
}

fn extend(
    masks: &[u32],
    target: usize,
    start: usize,
    current: &mut Vec<u16>,
    out: &mut Vec<Vec<u16>>,
) {
    if current.len() == target {
        out.push(current.clone());
        return;
    }
    for k in start..masks.len() {
        if current
            .iter()
            .all(|&c| masks_commute(masks[c as usize], masks[k]))
        {
            current.push(k as u16);
            extend(masks, target, k + 1, current, out);
            current.pop();
        }
    }
}

/// All permutations of `0..n` (zero-based images).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    // lexicographic successor
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("pivot");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Canonical orbit representative of the supports of `spec`.
pub fn canonical_structure(spec: &HamiltonianSpec) -> Structure {
    let n = spec.n_fermions();
    let base: Vec<[usize; 4]> = spec.terms().iter().map(|t| t.support).collect();
    let mut best: Option<Structure> = None;
    for p in permutations(n) {
        let mut img: Structure = base
            .iter()
            .map(|s| {
                let mut t = s.map(|i| p[i - 1] + 1);
                t.sort_unstable();
                t
            })
            .collect();
        img.sort_unstable();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    }
    best.unwrap_or_default()
}
