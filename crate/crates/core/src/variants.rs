//! Brute-force leader statistics for labeled k-ary trees and ordered
//! forests of labeled plane trees.
//!
//! Both families are enumerated as (shape, labeling) pairs: every unlabeled
//! shape in a fixed canonical order, then every permutation of `1..=n`
//! written onto the shape in preorder.

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{pn, Coefficient, UnivariatePolynomial};
use crate::report::VerificationReport;
use crate::tree::Label;

pub const DEFAULT_KARY_MAX_N: usize = 7;
pub const DEFAULT_KARY_MAX_KN: usize = 16;
pub const DEFAULT_FOREST_MAX_N: usize = 7;

/// Anything with a leader count.
pub trait Leaders {
    fn lead(&self) -> usize;
}

/// Labeled tree whose vertices each have `k` distinguishable child slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KaryTree {
    k: usize,
    root: Label,
    // slots[v][j] is the child of v in position j + 1
    slots: Vec<Vec<Option<Label>>>,
}

impl KaryTree {
    pub fn n(&self) -> usize {
        self.slots.len() - 1
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn root(&self) -> Label {
        self.root
    }

    /// Child of `v` at 1-based `position`.
    pub fn child(&self, v: Label, position: usize) -> Option<Label> {
        self.slots
            .get(v)?
            .get(position.checked_sub(1)?)
            .copied()
            .flatten()
    }

    fn min_below(&self, v: Label, counter: &mut usize) -> Label {
        let mut m = v;
        for c in self.slots[v].iter().flatten() {
            m = m.min(self.min_below(*c, counter));
        }
        if m == v {
            *counter += 1;
        }
        m
    }
}

impl Leaders for KaryTree {
    fn lead(&self) -> usize {
        let mut count = 0;
        self.min_below(self.root, &mut count);
        count
    }
}

/// Plane tree: children are an ordered sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaneTree {
    pub label: Label,
    pub children: Vec<PlaneTree>,
}

impl PlaneTree {
    fn min_below(&self, counter: &mut usize) -> Label {
        let mut m = self.label;
        for c in &self.children {
            m = m.min(c.min_below(counter));
        }
        if m == self.label {
            *counter += 1;
        }
        m
    }

    fn size(&self) -> usize {
        1 + self.children.iter().map(PlaneTree::size).sum::<usize>()
    }
}

/// Ordered sequence of plane trees whose labels partition `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaneForest {
    pub components: Vec<PlaneTree>,
}

impl PlaneForest {
    pub fn n(&self) -> usize {
        self.components.iter().map(PlaneTree::size).sum()
    }
}

impl Leaders for PlaneForest {
    fn lead(&self) -> usize {
        let mut count = 0;
        for c in &self.components {
            c.min_below(&mut count);
        }
        count
    }
}

#[derive(Clone, Debug)]
struct KaryShape {
    slots: Vec<Option<KaryShape>>,
}

impl KaryShape {
    fn build(
        &self,
        labels: &mut std::slice::Iter<'_, Label>,
        slots: &mut [Vec<Option<Label>>],
    ) -> Label {
        let v = *labels.next().expect("one label per node");
        for (j, sub) in self.slots.iter().enumerate() {
            if let Some(sub) = sub {
                let c = sub.build(labels, slots);
                slots[v][j] = Some(c);
            }
        }
        v
    }

    fn label(&self, n: usize, k: usize, labels: &[Label]) -> KaryTree {
        let mut slots = vec![vec![None; k]; n + 1];
        let root = self.build(&mut labels.iter(), &mut slots);
        KaryTree { k, root, slots }
    }
}

/// All k-ary shapes by size: `shapes[m]` has every shape with `m` nodes.
fn kary_shapes(n: usize, k: usize) -> Vec<Vec<Option<KaryShape>>> {
    let mut by_size: Vec<Vec<Option<KaryShape>>> = vec![vec![None]];
    for size in 1..=n {
        let mut out = Vec::new();
        for sizes in compositions_with_zeros(size - 1, k) {
            let choices: Vec<&Vec<Option<KaryShape>>> =
                sizes.iter().map(|&s| &by_size[s]).collect();
            for combo in choices.multi_cartesian_product_or_unit() {
                out.push(Some(KaryShape {
                    slots: combo.into_iter().cloned().collect(),
                }));
            }
        }
        by_size.push(out);
    }
    by_size
}

#[derive(Clone, Debug)]
struct PlaneShape {
    children: Vec<PlaneShape>,
}

impl PlaneShape {
    fn build(&self, labels: &mut std::slice::Iter<'_, Label>) -> PlaneTree {
        let label = *labels.next().expect("one label per node");
        PlaneTree {
            label,
            children: self.children.iter().map(|c| c.build(labels)).collect(),
        }
    }
}

/// Ordered lists of plane shapes by total size.
fn plane_sequences(n: usize) -> Vec<Vec<Vec<PlaneShape>>> {
    // seqs[m] = every ordered list of shapes with m nodes in total
    let mut seqs: Vec<Vec<Vec<PlaneShape>>> = vec![vec![vec![]]];
    for total in 1..=n {
        let mut out = Vec::new();
        for first in 1..=total {
            // a tree with `first` nodes is a root over a list of `first - 1`
            for kids in &seqs[first - 1] {
                let head = PlaneShape {
                    children: kids.clone(),
                };
                for tail in &seqs[total - first] {
                    let mut list = Vec::with_capacity(tail.len() + 1);
                    list.push(head.clone());
                    list.extend(tail.iter().cloned());
                    out.push(list);
                }
            }
        }
        seqs.push(out);
    }
    seqs
}

/// Ways to write `total` as an ordered sum of `parts` non-negative integers,
/// lexicographically.
fn compositions_with_zeros(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions_with_zeros(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

trait CartesianOrUnit<'a, T: 'a> {
    fn multi_cartesian_product_or_unit(self) -> Vec<Vec<&'a T>>;
}

impl<'a, T: 'a> CartesianOrUnit<'a, T> for Vec<&'a Vec<T>> {
    fn multi_cartesian_product_or_unit(self) -> Vec<Vec<&'a T>> {
        if self.is_empty() {
            return vec![vec![]];
        }
        self.into_iter()
            .map(|v| v.iter())
            .multi_cartesian_product()
            .collect()
    }
}

fn check_kary(n: usize, k: usize, max_n: usize, max_kn: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if k == 0 {
        return Err(Error::DomainError("arity k must be at least 1".into()));
    }
    if n > max_n {
        return Err(Error::ResourceBound { n, cap: max_n });
    }
    if k * n > max_kn {
        return Err(Error::ResourceBound {
            n: k * n,
            cap: max_kn,
        });
    }
    Ok(())
}

fn check_forest(n: usize, max_n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > max_n {
        return Err(Error::ResourceBound { n, cap: max_n });
    }
    Ok(())
}

fn kary_shape_list(n: usize, k: usize) -> Vec<KaryShape> {
    kary_shapes(n, k)
        .pop()
        .expect("sizes 0..=n")
        .into_iter()
        .map(|s| s.expect("nonempty size"))
        .collect()
}

/// Every labeled k-ary tree on `1..=n`, once each.
pub fn enumerate_kary(n: usize, k: usize) -> Result<impl Iterator<Item = KaryTree>> {
    enumerate_kary_with_cap(n, k, DEFAULT_KARY_MAX_N, DEFAULT_KARY_MAX_KN)
}

pub fn enumerate_kary_with_cap(
    n: usize,
    k: usize,
    max_n: usize,
    max_kn: usize,
) -> Result<impl Iterator<Item = KaryTree>> {
    check_kary(n, k, max_n, max_kn)?;
    Ok(kary_shape_list(n, k).into_iter().flat_map(move |shape| {
        (1..=n)
            .permutations(n)
            .map(move |labels| shape.label(n, k, &labels))
    }))
}

fn forest_shape_list(n: usize) -> Vec<Vec<PlaneShape>> {
    plane_sequences(n).pop().expect("sizes 0..=n")
}

fn build_forest(shape: &[PlaneShape], labels: &[Label]) -> PlaneForest {
    let mut it = labels.iter();
    PlaneForest {
        components: shape.iter().map(|s| s.build(&mut it)).collect(),
    }
}

/// Every ordered forest of labeled plane trees on `1..=n`, once each.
pub fn enumerate_plane_forests(n: usize) -> Result<impl Iterator<Item = PlaneForest>> {
    enumerate_plane_forests_with_cap(n, DEFAULT_FOREST_MAX_N)
}

pub fn enumerate_plane_forests_with_cap(
    n: usize,
    max_n: usize,
) -> Result<impl Iterator<Item = PlaneForest>> {
    check_forest(n, max_n)?;
    Ok(forest_shape_list(n).into_iter().flat_map(move |shape| {
        (1..=n)
            .permutations(n)
            .map(move |labels| build_forest(&shape, &labels))
    }))
}

/// `Σ u^lead` over `items`.
pub fn lead_polynomial<T: Leaders>(
    items: impl IntoIterator<Item = T>,
) -> Result<UnivariatePolynomial> {
    let mut counts: Vec<Coefficient> = Vec::new();
    for item in items {
        let lead = item.lead();
        if counts.len() <= lead {
            counts.resize(lead + 1, 0);
        }
        counts[lead] += 1;
    }
    counts_to_poly(&counts)
}

fn counts_to_poly(counts: &[Coefficient]) -> Result<UnivariatePolynomial> {
    UnivariatePolynomial::from_terms(
        1,
        counts
            .iter()
            .enumerate()
            .map(|(lead, &c)| ([lead as u32], c)),
    )
}

fn merge_counts(mut a: Vec<Coefficient>, b: Vec<Coefficient>) -> Vec<Coefficient> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// `P_n(k, (k-1)u, u)`.
pub fn kary_formula(n: usize, k: usize) -> Result<UnivariatePolynomial> {
    let u = UnivariatePolynomial::u();
    pn(
        n,
        &UnivariatePolynomial::int(k as Coefficient),
        &u.scale(k as Coefficient - 1)?,
        &u,
    )
}

/// `P_n(1, 2u, u)`.
pub fn ordered_formula(n: usize) -> Result<UnivariatePolynomial> {
    let u = UnivariatePolynomial::u();
    pn(n, &UnivariatePolynomial::int(1), &u.scale(2)?, &u)
}

/// Brute-force k-ary leader polynomial against `P_n(k, (k-1)u, u)`.
pub fn verify_kary(n: usize, k: usize) -> Result<VerificationReport> {
    verify_kary_with_cap(n, k, DEFAULT_KARY_MAX_N, DEFAULT_KARY_MAX_KN)
}

pub fn verify_kary_with_cap(
    n: usize,
    k: usize,
    max_n: usize,
    max_kn: usize,
) -> Result<VerificationReport> {
    check_kary(n, k, max_n, max_kn)?;
    let counts = kary_shape_list(n, k)
        .par_iter()
        .map(|shape| {
            let mut counts = vec![0; n + 1];
            for labels in (1..=n).permutations(n) {
                counts[shape.label(n, k, &labels).lead()] += 1;
            }
            counts
        })
        .reduce(|| vec![0; n + 1], merge_counts);
    let visited = counts.iter().sum::<Coefficient>() as u64;
    let lhs = counts_to_poly(&counts)?;
    let rhs = kary_formula(n, k)?;
    Ok(VerificationReport::new("kary", n, lhs.to_string(), rhs.to_string(), visited).with_k(k))
}

/// Brute-force ordered-forest leader polynomial against `P_n(1, 2u, u)`.
pub fn verify_ordered(n: usize) -> Result<VerificationReport> {
    verify_ordered_with_cap(n, DEFAULT_FOREST_MAX_N)
}

pub fn verify_ordered_with_cap(n: usize, max_n: usize) -> Result<VerificationReport> {
    check_forest(n, max_n)?;
    let counts = forest_shape_list(n)
        .par_iter()
        .map(|shape| {
            let mut counts = vec![0; n + 1];
            for labels in (1..=n).permutations(n) {
                counts[build_forest(shape, &labels).lead()] += 1;
            }
            counts
        })
        .reduce(|| vec![0; n + 1], merge_counts);
    let visited = counts.iter().sum::<Coefficient>() as u64;
    let lhs = counts_to_poly(&counts)?;
    let rhs = ordered_formula(n)?;
    Ok(
        VerificationReport::new("ordered", n, lhs.to_string(), rhs.to_string(), visited)
            .with_note("objects are ordered forests of labeled plane trees"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kary_counts() {
        assert_eq!(enumerate_kary(2, 2).unwrap().count(), 4);
        assert_eq!(enumerate_kary(3, 1).unwrap().count(), 6);
        for k in 1..=4 {
            assert_eq!(enumerate_kary(1, k).unwrap().count(), 1);
        }
        assert!(matches!(
            enumerate_kary(8, 1),
            Err(Error::ResourceBound { .. })
        ));
        assert!(matches!(
            enumerate_kary(6, 3),
            Err(Error::ResourceBound { .. })
        ));
        assert!(enumerate_kary(2, 0).is_err());
    }

    #[test]
    fn kary_positions_are_distinct() {
        let trees: Vec<KaryTree> = enumerate_kary(2, 2).unwrap().collect();
        let left = trees
            .iter()
            .filter(|t| t.root() == 1 && t.child(1, 1) == Some(2))
            .count();
        let right = trees
            .iter()
            .filter(|t| t.root() == 1 && t.child(1, 2) == Some(2))
            .count();
        assert_eq!((left, right), (1, 1));
        assert_eq!(trees[0].child(1, 3), None);
    }

    #[test]
    fn forest_counts() {
        assert_eq!(enumerate_plane_forests(1).unwrap().count(), 1);
        assert_eq!(enumerate_plane_forests(2).unwrap().count(), 4);
        assert_eq!(enumerate_plane_forests(3).unwrap().count(), 30);
        assert!(enumerate_plane_forests(8).is_err());
        assert!(enumerate_plane_forests(3).unwrap().all(|f| f.n() == 3));
    }

    #[test]
    fn lead_polynomials_small() {
        let p = lead_polynomial(enumerate_kary(2, 2).unwrap()).unwrap();
        assert_eq!(p.to_golden(), "1 2\n2 2\n");
        let p = lead_polynomial(enumerate_plane_forests(2).unwrap()).unwrap();
        assert_eq!(p.to_golden(), "1 1\n2 3\n");
        // u(1+u)(2+u)
        let p = lead_polynomial(enumerate_kary(3, 1).unwrap()).unwrap();
        assert_eq!(p.to_golden(), "1 2\n2 3\n3 1\n");
    }

    #[test]
    fn small_verifications() {
        let r = verify_kary(2, 2).unwrap();
        assert!(r.is_equal());
        assert_eq!(r.lhs, "2 u^1 + 2 u^2");
        assert!(verify_kary(3, 1).unwrap().is_equal());
        let r = verify_ordered(2).unwrap();
        assert!(r.is_equal());
        assert_eq!(r.rhs, "1 u^1 + 3 u^2");
        assert_eq!(r.count, 4);
    }

    #[test]
    fn compositions() {
        assert_eq!(
            compositions_with_zeros(2, 2),
            vec![vec![0, 2], vec![1, 1], vec![2, 0]]
        );
        assert_eq!(compositions_with_zeros(0, 3), vec![vec![0, 0, 0]]);
    }
}
