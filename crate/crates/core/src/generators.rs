//! Random profile generators for the structured domains.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::domains::Axis;
use crate::model::ModelSet;
use crate::profile::Profile;
use crate::ranking::StrictRanking;

pub fn random_ranking<R: Rng + ?Sized>(rng: &mut R, models: &ModelSet) -> StrictRanking {
    let mut seq: Vec<usize> = (0..models.len()).collect();
    seq.shuffle(rng);
    StrictRanking::from_indices(models.clone(), seq).expect("shuffled permutation")
}

pub fn random_profile<R: Rng + ?Sized>(rng: &mut R, models: &ModelSet, voters: usize) -> Profile {
    let rankings = (0..voters).map(|_| random_ranking(rng, models)).collect();
    Profile::from_rankings(rankings).expect("shared model set")
}

/// A ranking single-peaked on `axis`: starting from a random peak, the next
/// model is taken from the left or right frontier at random.
pub fn single_peaked_ranking<R: Rng + ?Sized>(rng: &mut R, axis: &Axis) -> StrictRanking {
    let seq = axis.sequence();
    let k = seq.len();
    let peak = rng.gen_range(0..k);
    let (mut lo, mut hi) = (peak, peak);
    let mut out = vec![seq[peak]];
    while out.len() < k {
        let go_left = if lo == 0 {
            false
        } else if hi == k - 1 {
            true
        } else {
            rng.gen_bool(0.5)
        };
        if go_left {
            lo -= 1;
            out.push(seq[lo]);
        } else {
            hi += 1;
            out.push(seq[hi]);
        }
    }
    StrictRanking::from_indices(axis.models().clone(), out).expect("axis walk is a permutation")
}

/// A single-peaked profile together with the hidden axis it was drawn from.
pub fn single_peaked_profile<R: Rng + ?Sized>(
    rng: &mut R,
    models: &ModelSet,
    voters: usize,
) -> (Axis, Profile) {
    let axis = {
        let r = random_ranking(rng, models);
        Axis::from_indices(models.clone(), r.sequence().to_vec()).expect("permutation")
    };
    let rankings = (0..voters).map(|_| single_peaked_ranking(rng, &axis)).collect();
    (axis, Profile::from_rankings(rankings).expect("shared model set"))
}

enum Node {
    Leaf(usize),
    Split(Box<Node>, Box<Node>),
}

fn random_tree<R: Rng + ?Sized>(rng: &mut R, items: &mut [usize]) -> Node {
    if items.len() == 1 {
        return Node::Leaf(items[0]);
    }
    items.shuffle(rng);
    let cut = rng.gen_range(1..items.len());
    let (left, right) = items.split_at_mut(cut);
    Node::Split(Box::new(random_tree(rng, left)), Box::new(random_tree(rng, right)))
}

fn flatten_tree<R: Rng + ?Sized>(rng: &mut R, node: &Node, out: &mut Vec<usize>) {
    match node {
        Node::Leaf(m) => out.push(*m),
        Node::Split(a, b) => {
            if rng.gen_bool(0.5) {
                flatten_tree(rng, a, out);
                flatten_tree(rng, b, out);
            } else {
                flatten_tree(rng, b, out);
                flatten_tree(rng, a, out);
            }
        }
    }
}

/// A group-separable profile: a random binary tree over the models is drawn
/// once, and each voter independently orients every internal node.
pub fn group_separable_profile<R: Rng + ?Sized>(rng: &mut R, models: &ModelSet, voters: usize) -> Profile {
    let mut items: Vec<usize> = (0..models.len()).collect();
    let tree = random_tree(rng, &mut items);
    let rankings = (0..voters)
        .map(|_| {
            let mut seq = Vec::with_capacity(models.len());
            flatten_tree(rng, &tree, &mut seq);
            StrictRanking::from_indices(models.clone(), seq).expect("tree leaves are a permutation")
        })
        .collect();
    Profile::from_rankings(rankings).expect("shared model set")
}

/// A profile distance-restricted to degree 1: every voter reports a base
/// ranking, possibly with one fixed adjacent pair swapped.
pub fn degree_one_profile<R: Rng + ?Sized>(rng: &mut R, models: &ModelSet, voters: usize) -> Profile {
    let base = random_ranking(rng, models);
    let swap_at = rng.gen_range(0..models.len().saturating_sub(1).max(1));
    let rankings = (0..voters)
        .map(|_| {
            let mut seq = base.sequence().to_vec();
            if seq.len() >= 2 && rng.gen_bool(0.5) {
                seq.swap(swap_at, swap_at + 1);
            }
            StrictRanking::from_indices(models.clone(), seq).expect("swap keeps a permutation")
        })
        .collect();
    Profile::from_rankings(rankings).expect("shared model set")
}
