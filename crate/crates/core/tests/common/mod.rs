// Shared proptest strategies. Included with `mod common;`.
#![allow(dead_code)]

use minrank::{BitVec, Entry, Gf2Matrix, PartialMatrix, PartialRow};
use proptest::prelude::*;

pub fn matrix(max_m: usize, max_n: usize) -> impl Strategy<Value = Gf2Matrix> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), n), m).prop_map(move |rows| {
            Gf2Matrix::new(n, rows.iter().map(|r| BitVec::from_bools(r)).collect()).unwrap()
        })
    })
}

fn entry(star_weight: u32) -> impl Strategy<Value = Entry> {
    prop_oneof![
        3 => Just(Entry::Zero),
        3 => Just(Entry::One),
        star_weight => Just(Entry::Star),
    ]
}

/// Random partial matrices with at most `max_stars` stars in total.
pub fn partial(
    max_m: usize,
    max_n: usize,
    max_stars: usize,
) -> impl Strategy<Value = PartialMatrix> {
    (1..=max_m, 1..=max_n, 1u32..=4).prop_flat_map(move |(m, n, w)| {
        prop::collection::vec(prop::collection::vec(entry(w), n), m).prop_map(move |rows| {
            let mut budget = max_stars;
            let rows = rows
                .into_iter()
                .map(|mut r| {
                    for e in r.iter_mut() {
                        if *e == Entry::Star {
                            if budget == 0 {
                                *e = Entry::Zero;
                            } else {
                                budget -= 1;
                            }
                        }
                    }
                    PartialRow::from_entries(&r)
                })
                .collect();
            PartialMatrix::new(n, rows).unwrap()
        })
    })
}

pub fn all_vectors(n: usize) -> impl Iterator<Item = BitVec> {
    (0..1u64 << n).map(move |x| BitVec::from_u64(n, x))
}

/// Least rank over all completions, by enumeration.
pub fn min_rank_by_completions(a: &PartialMatrix) -> usize {
    a.completions(&minrank::Limits::default())
        .unwrap()
        .map(|c| c.rank())
        .min()
        .unwrap()
}
