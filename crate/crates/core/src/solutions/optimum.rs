//! Exact `opt(A)`: the independence number of the Cayley graph on GF(2)^n
//! generated by `K_A`.
//!
//! Two reductions shrink the graph before searching:
//!
//! * Vertices in different cosets of `W = span(K)` are never adjacent, so
//!   the graph is `2^(n - dim W)` copies of the Cayley graph of `W`.
//! * The stabilizer `N = {v : K + v = K}` acts by automorphisms that never
//!   join `x` to `x + v`; independent sets of the quotient by `N` lift to
//!   unions of full `N`-cosets, and every independent set meets each coset
//!   at most `|N|` times.
//!
//! The remaining graph starts from cosets of a largest avoiding subspace
//! and is searched with a clique-cover bound: candidates are greedily split
//! into cliques, and an independent set takes at most one vertex from each.
//! Above 6 dimensions that search gets a node budget. When it runs out,
//! the graph is solved along a chain of subspaces `U_1 < ... < U_q`,
//! smallest first: every coset of `U_t` holds at most `alpha(U_t)` points
//! of an independent set, and the caps of all lower levels nest into a
//! bound for the next one.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::bitmap::Bitmap;
use super::linear::avoiding_basis;
use super::{ForbiddenSet, SolutionSet};
use crate::error::{ensure_limit, Result};
use crate::gf2::BitVec;
use crate::limits::Limits;
use crate::partial::PartialMatrix;

/// Translates are cached up to this dimension (`2^13` bitmaps of 1 KiB).
const CACHE_DIM: usize = 13;

/// Reduced row echelon basis of small vectors packed in `u64`, with the
/// lowest set bit of each basis vector as its pivot.
fn rref(vectors: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for v in vectors {
        let v = reduce(v, &basis);
        if v == 0 {
            continue;
        }
        let p = v & v.wrapping_neg();
        for b in basis.iter_mut() {
            if *b & p != 0 {
                *b ^= v;
            }
        }
        basis.push(v);
    }
    basis.sort_by_key(|b| b.trailing_zeros());
    basis
}

/// `v` with every pivot of the RREF `basis` cleared: zero exactly when
/// `v` is in the span, and equal for vectors in the same coset.
fn reduce(v: u64, basis: &[u64]) -> u64 {
    basis.iter().fold(v, |v, &b| {
        if v & (b & b.wrapping_neg()) != 0 {
            v ^ b
        } else {
            v
        }
    })
}

fn pivots(basis: &[u64]) -> Vec<usize> {
    basis.iter().map(|b| b.trailing_zeros() as usize).collect()
}

/// Coordinates of `x` in an RREF basis: its bits at the pivots.
fn coords(x: u64, pivots: &[usize]) -> u64 {
    pivots
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &p)| acc | (((x >> p) & 1) << k))
}

fn combine(c: u64, basis: &[u64]) -> u64 {
    basis
        .iter()
        .enumerate()
        .filter(|(k, _)| (c >> k) & 1 == 1)
        .fold(0, |acc, (_, &b)| acc ^ b)
}

struct Mis {
    gens: Bitmap,
    cache: Option<Vec<Bitmap>>,
    stack: Vec<usize>,
    best: Vec<usize>,
    /// Size at which the search stops early.
    target: usize,
    /// Remaining search nodes, if bounded.
    budget: Option<u64>,
    gave_up: bool,
}

impl Mis {
    fn new(gens: Bitmap) -> Self {
        let cache = (gens.dim() <= CACHE_DIM).then(|| {
            (0..1usize << gens.dim())
                .map(|v| gens.translate(v))
                .collect()
        });
        Self {
            target: 1 << gens.dim(),
            gens,
            cache,
            stack: Vec::new(),
            best: Vec::new(),
            budget: None,
            gave_up: false,
        }
    }

    fn with_neighbours<T>(&self, v: usize, f: impl FnOnce(&Bitmap) -> T) -> T {
        match &self.cache {
            Some(c) => f(&c[v]),
            None => f(&self.gens.translate(v)),
        }
    }

    fn greedy(&self, mut cand: Bitmap) -> Vec<usize> {
        let mut chosen = vec![0];
        while let Some(v) = cand.first() {
            chosen.push(v);
            cand.clear(v);
            self.with_neighbours(v, |nb| cand.and_not_assign(nb));
        }
        chosen
    }

    /// Greedy partition of `cand` into cliques. Returns the vertices in
    /// order of assignment with the running clique count.
    fn cover(&self, cand: &Bitmap) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cand.count());
        let mut colour = Vec::with_capacity(order.capacity());
        let mut left = cand.clone();
        let mut k = 0;
        while !left.is_empty() {
            k += 1;
            let mut q = left.clone();
            while let Some(v) = q.first() {
                left.clear(v);
                q.clear(v);
                self.with_neighbours(v, |nb| q.and_assign(nb));
                order.push(v);
                colour.push(k);
            }
        }
        (order, colour)
    }

    fn done(&self) -> bool {
        self.gave_up || self.best.len() >= self.target
    }

    fn expand(&mut self, mut cand: Bitmap) {
        if let Some(b) = self.budget.as_mut() {
            if *b == 0 {
                self.gave_up = true;
                return;
            }
            *b -= 1;
        }
        let (order, colour) = self.cover(&cand);
        for idx in (0..order.len()).rev() {
            if self.done() || self.stack.len() + colour[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            let mut next = cand.clone();
            next.clear(v);
            self.with_neighbours(v, |nb| next.and_not_assign(nb));
            self.stack.push(v);
            if next.is_empty() {
                if self.stack.len() > self.best.len() {
                    self.best = self.stack.clone();
                }
            } else {
                self.expand(next);
            }
            self.stack.pop();
            cand.clear(v);
        }
    }

    /// A maximum independent set containing vertex 0, starting from the
    /// independent set `seed`. `None` when the node budget runs out first.
    fn solve(&mut self, seed: Vec<usize>) -> Option<Vec<usize>> {
        let mut cand = self.gens.complement();
        cand.clear(0);
        let greedy = self.greedy(cand.clone());
        self.best = if greedy.len() >= seed.len() {
            greedy
        } else {
            seed
        };
        self.stack = vec![0];
        self.gave_up = false;
        if !cand.is_empty() {
            self.expand(cand);
        }
        (!self.gave_up).then(|| self.best.clone())
    }
}

fn alpha(gens: Bitmap) -> usize {
    Mis::new(gens)
        .solve(vec![0])
        .expect("unbounded search")
        .len()
}

/// The Cayley graph induced on the span of `basis`, in its coordinates.
fn induced(k: &Bitmap, basis: &[u64]) -> Bitmap {
    let j = basis.len();
    Bitmap::from_indices(
        j,
        (1..1u64 << j)
            .filter(|&c| k.get(combine(c, basis) as usize))
            .map(|c| c as usize),
    )
}

/// Search nodes spent by the plain search before switching to
/// [`doll_search`].
const FIRST_BUDGET: u64 = 20_000;

/// Chain levels chosen by exact independence numbers.
const EXACT_LEVELS: usize = 6;

/// Low-weight generators tried when extending the chain.
const POOL: usize = 64;

/// Candidate chain vectors: light generators and the unit vectors.
fn chain_pool(k: &Bitmap) -> Vec<u64> {
    let mut pool: Vec<u64> = k.iter_ones().take(1 << 12).map(|x| x as u64).collect();
    pool.sort_by_key(|x| (x.count_ones(), *x));
    pool.truncate(POOL);
    pool.extend((0..k.dim()).map(|j| 1u64 << j));
    pool
}

/// Number of generators in the coset `u + span(basis)`.
fn fresh_edges(k: &Bitmap, basis: &[u64], u: u64) -> usize {
    (0..1u64 << basis.len())
        .filter(|&c| k.get((combine(c, basis) ^ u) as usize))
        .count()
}

/// The first levels of the chain, each minimizing the independence number
/// of its span and then maximizing the generators inside.
fn low_chain(k: &Bitmap, pool: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    while basis.len() < k.dim().min(EXACT_LEVELS) {
        let mut best: Option<((usize, usize), u64)> = None;
        for &u in pool {
            if rref(basis.iter().copied().chain([u])).len() == basis.len() {
                continue;
            }
            let fresh = fresh_edges(k, &basis, u);
            basis.push(u);
            let score = (alpha(induced(k, &basis)), usize::MAX - fresh);
            basis.pop();
            if best.is_none_or(|(b, _)| score < b) {
                best = Some((score, u));
            }
        }
        basis.push(best.expect("the unit vectors reach every dimension").1);
    }
    basis
}

/// Random subspaces sampled for the bottom of the chain.
const SAMPLES: usize = 512;

/// Neighbourhoods of the Cayley graph on `GF(2)^6` with generators `low`.
fn adjacency64(low: u64) -> [u64; 64] {
    std::array::from_fn(|i| {
        (0..64)
            .filter(|&t| (low >> (i ^ t)) & 1 == 1)
            .fold(0u64, |a, t| a | (1 << t))
    })
}

/// The bottom of the chain: among the greedy chain and spans of random
/// generators, the span with the smallest independence number, ordered
/// greedily inside. The bound `2^(q - 6) alpha(U_6)` is often already
/// tight.
fn bottom_chain(k: &Bitmap, pool: &[u64]) -> Vec<u64> {
    let d = k.dim().min(EXACT_LEVELS);
    let full = u64::MAX >> (64 - (1 << d));
    let score = |basis: &[u64]| alpha64(&adjacency64(induced(k, basis).words()[0]), full);
    let mut best = low_chain(k, pool);
    let mut best_alpha = score(&best);
    let gens: Vec<u64> = k.iter_ones().map(|x| x as u64).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..SAMPLES {
        let basis = rref(gens.choose_multiple(&mut rng, d).copied());
        if basis.len() < d {
            continue;
        }
        let a = score(&basis);
        if a < best_alpha {
            best_alpha = a;
            best = basis;
        }
    }
    let members: Vec<u64> = (1..1u64 << d).map(|c| combine(c, &best)).collect();
    low_chain(k, &members)
}

/// Candidates for the next chain vector above the exact levels, best
/// first. `set` is a largest independent set of the current span; vectors
/// `u` for which `set` and `set + u` together stay independent let the next
/// level simply double, so the others are preferred, and then the densest
/// coset.
fn next_chain_vectors(k: &Bitmap, pool: &[u64], basis: &[u64], set: &[u64]) -> Vec<u64> {
    let mut sums = Bitmap::empty(k.dim());
    for &s in set {
        for &t in set {
            sums.set((s ^ t) as usize);
        }
    }
    let sums: Vec<usize> = sums.iter_ones().collect();
    let span = rref(basis.iter().copied());
    let mut seen = Vec::new();
    let mut scored = Vec::new();
    for &u in pool {
        // One representative per coset of the span.
        let r = reduce(u, &span);
        if r == 0 || seen.contains(&r) {
            continue;
        }
        seen.push(r);
        let doubles = sums.iter().all(|&d| !k.get(d ^ u as usize));
        scored.push(((doubles, usize::MAX - fresh_edges(k, basis, u)), u));
    }
    scored.sort_by_key(|&(score, _)| score);
    scored.into_iter().map(|(_, u)| u).collect()
}

/// Independence number of the vertex set `cand` in a graph on at most 64
/// vertices with neighbourhoods `adj`.
fn alpha64(adj: &[u64; 64], cand: u64) -> u32 {
    fn cover(adj: &[u64; 64], mut c: u64) -> u32 {
        let mut k = 0;
        while c != 0 {
            let mut q = c;
            while q != 0 {
                let v = q.trailing_zeros() as usize;
                c &= !(1 << v);
                q &= adj[v] & !(1 << v);
            }
            k += 1;
        }
        k
    }
    fn go(adj: &[u64; 64], cand: u64, size: u32, best: &mut u32) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cover(adj, cand) <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        go(adj, cand & !adj[v] & !(1 << v), size + 1, best);
        go(adj, cand & !(1 << v), size, best);
    }
    let mut best = 0;
    go(adj, cand, 0, &mut best);
    best
}

/// No cap for levels not yet solved.
const UNCAPPED: u32 = u32::MAX / 4;

/// Branch and bound for the independence number of the Cayley graph on
/// `GF(2)^j` whose labels list a chain `U_1 < U_2 < ...` by prefixes: the
/// cosets of `U_t` are the aligned runs of `2^t` labels. An independent
/// set meets each coset of `U_t` in at most `alpha(U_t)` points; nesting
/// these caps bounds every branch.
struct DollSearch {
    gens: Bitmap,
    cache: Option<Vec<Bitmap>>,
    /// Bound for one byte under the caps of levels 1 to 3.
    byte_cap: [u8; 256],
    /// `caps[t]` is the cap of level `t`.
    caps: Vec<u32>,
    /// Neighbourhoods within `U_6`, present once `U_6` is a proper level.
    word_adj: Option<[u64; 64]>,
    /// Independence numbers of vertex sets of `U_6`, by bit mask. Every word
    /// is a translate of `U_6` with the same bit positions.
    word_alpha: HashMap<u64, u32>,
    chosen: Bitmap,
    stack: Vec<usize>,
    best: Vec<usize>,
    target: usize,
    /// Branches left before giving up, if limited.
    budget: Option<u64>,
}

impl DollSearch {
    fn new(gens: Bitmap, known: &[usize], target: usize) -> Self {
        let j = gens.dim();
        let caps: Vec<u32> = (0..=j.max(6))
            .map(|t| known.get(t).map_or(UNCAPPED, |&c| c as u32))
            .collect();
        let mut byte_cap = [0u8; 256];
        for (x, slot) in byte_cap.iter_mut().enumerate() {
            let pair = |i: usize| ((x >> (2 * i)) & 3).count_ones().min(caps[1]);
            let quad = |i: usize| (pair(2 * i) + pair(2 * i + 1)).min(caps[2]);
            *slot = (quad(0) + quad(1)).min(caps[3]) as u8;
        }
        let cache = (j <= CACHE_DIM).then(|| (0..1usize << j).map(|v| gens.translate(v)).collect());
        let word_adj = (j > 6).then(|| adjacency64(gens.words()[0]));
        Self {
            word_adj,
            word_alpha: HashMap::new(),
            chosen: Bitmap::from_indices(j, [0]),
            gens,
            cache,
            byte_cap,
            caps,
            stack: vec![0],
            best: vec![0],
            target,
            budget: None,
        }
    }

    fn word_bound(&self, w: u64) -> u32 {
        let byte = |i: usize| u32::from(self.byte_cap[((w >> (8 * i)) & 0xff) as usize]);
        let l4 = |i: usize| (byte(2 * i) + byte(2 * i + 1)).min(self.caps[4]);
        let l5 = |i: usize| (l4(2 * i) + l4(2 * i + 1)).min(self.caps[5]);
        (l5(0) + l5(1)).min(self.caps[6])
    }

    /// [`Self::word_bound`] for the word holding vertex 0, where the
    /// child containing 0 is also the larger one.
    fn zero_word_bound(&self, w: u64) -> u32 {
        let mut vals = [0u32; 64];
        for (i, v) in vals.iter_mut().enumerate() {
            *v = ((w >> i) & 1) as u32;
        }
        let mut len = 64;
        for t in 1..=6 {
            len /= 2;
            let zero = 2 * vals[0];
            for i in 0..len {
                vals[i] = (vals[2 * i] + vals[2 * i + 1]).min(self.caps[t]);
            }
            vals[0] = vals[0].min(zero);
        }
        vals[0]
    }

    fn exact_word(&mut self, w: u64) -> u32 {
        let Some(adj) = &self.word_adj else {
            return UNCAPPED;
        };
        *self.word_alpha.entry(w).or_insert_with(|| alpha64(adj, w))
    }

    fn bound(&mut self, cand: &Bitmap) -> usize {
        let words: Vec<u64> = cand
            .words()
            .iter()
            .zip(self.chosen.words())
            .map(|(&c, &s)| c | s)
            .collect();
        let mut level: Vec<u32> = words
            .iter()
            .enumerate()
            .map(|(i, &w)| {
                let nested = if i == 0 {
                    self.zero_word_bound(w)
                } else {
                    self.word_bound(w)
                };
                if nested == 0 {
                    0
                } else {
                    nested.min(self.exact_word(w))
                }
            })
            .collect();
        let mut t = 7;
        while level.len() > 1 {
            let zero = 2 * level[0];
            level = level
                .chunks(2)
                .map(|p| (p[0] + p[1]).min(self.caps[t]))
                .collect();
            level[0] = level[0].min(zero);
            t += 1;
        }
        level[0] as usize
    }

    /// Searches until the target or the budget is reached; false when the
    /// budget ran out first.
    fn run(&mut self) -> bool {
        let mut root = self.gens.complement();
        root.clear(0);
        let mut frames = vec![root];
        while let Some(cand) = frames.last_mut() {
            if self.stack.len() > self.best.len() {
                self.best.clone_from(&self.stack);
            }
            if self.best.len() >= self.target {
                return true;
            }
            let v = match cand.first() {
                Some(v) if self.bound(cand) > self.best.len() => v,
                _ => {
                    frames.pop();
                    if !frames.is_empty() {
                        let u = self.stack.pop().expect("one vertex per frame");
                        self.chosen.clear(u);
                    }
                    continue;
                }
            };
            if let Some(b) = &mut self.budget {
                if *b == 0 {
                    return false;
                }
                *b -= 1;
            }
            cand.clear(v);
            let mut next = cand.clone();
            match &self.cache {
                Some(c) => next.and_not_assign(&c[v]),
                None => next.and_not_assign(&self.gens.translate(v)),
            }
            self.stack.push(v);
            self.chosen.set(v);
            frames.push(next);
        }
        true
    }
}

/// Branches given to each candidate chain vector in the first round.
const LEVEL_BUDGET: u64 = 20_000;

/// Candidate chain vectors raced per level.
const RACERS: usize = 4;

/// Solves level `j` of `chain`: a largest independent set containing 0 of
/// the span, in chain coordinates, or `None` if `budget` ran out.
fn solve_level(
    k: &Bitmap,
    chain: &[u64],
    caps: &[usize],
    best: &[usize],
    seed: &[usize],
    budget: Option<u64>,
) -> Option<Vec<usize>> {
    let j = chain.len();
    let mut label = vec![0u64; 1 << j];
    for y in 1..1usize << j {
        label[y] = label[y & (y - 1)] ^ chain[y.trailing_zeros() as usize];
    }
    let gens = Bitmap::from_indices(j, (0..1usize << j).filter(|&y| k.get(label[y] as usize)));
    let mut search = DollSearch::new(gens, caps, 2 * caps[j - 1]);
    let inherited = seed_within(seed, chain);
    search.best = if inherited.len() > best.len() {
        inherited
    } else {
        best.to_vec()
    };
    search.budget = budget;
    search.run().then_some(search.best)
}

/// A maximum independent set containing 0 of the Cayley graph of `k`,
/// solving the levels of a chain from the bottom up. Above the exact
/// levels several next vectors are tried under growing budgets and the
/// first to finish is kept.
fn doll_search(k: &Bitmap, seed: &[usize]) -> Vec<usize> {
    let q = k.dim();
    let pool = chain_pool(k);
    let low = bottom_chain(k, &pool);
    let mut chain = Vec::new();
    let mut caps = vec![1usize];
    // The current best set in chain coordinates.
    let mut best = vec![0usize];
    for j in 1..=q {
        let points: Vec<u64> = best.iter().map(|&y| combine(y as u64, &chain)).collect();
        let racers = if j <= low.len() {
            vec![low[j - 1]]
        } else {
            let mut r = next_chain_vectors(k, &pool, &chain, &points);
            r.truncate(RACERS);
            r
        };
        // Racers that finished with a doubled level; accepted only when
        // every racer does.
        let mut doubled: Vec<Option<Vec<usize>>> = vec![None; racers.len()];
        let mut budget = LEVEL_BUDGET;
        let (u, found) = 'race: loop {
            for (i, &u) in racers.iter().enumerate() {
                if doubled[i].is_some() {
                    continue;
                }
                chain.push(u);
                let limit = (racers.len() > 1).then_some(budget);
                let done = solve_level(k, &chain, &caps, &best, seed, limit);
                chain.pop();
                match done {
                    Some(found) if found.len() < 2 * caps[j - 1] || racers.len() == 1 => {
                        break 'race (u, found)
                    }
                    Some(found) => doubled[i] = Some(found),
                    None => {}
                }
            }
            if doubled.iter().all(Option::is_some) {
                let found = doubled[0].take().expect("every racer finished");
                break 'race (racers[0], found);
            }
            budget = budget.saturating_mul(4);
        };
        chain.push(u);
        best = found;
        caps.push(best.len());
    }
    best.iter()
        .map(|&y| combine(y as u64, &chain) as usize)
        .collect()
}

/// The largest part of `set` inside one coset of `span(chain)`, moved
/// into the span and written in chain coordinates.
fn seed_within(set: &[usize], chain: &[u64]) -> Vec<usize> {
    // Reduced basis with the chain combination behind each vector.
    let mut reduced: Vec<(u64, u64)> = Vec::new();
    for (t, &c) in chain.iter().enumerate() {
        let (mut v, mut m) = (c, 1u64 << t);
        for &(b, bm) in &reduced {
            if v & (b & b.wrapping_neg()) != 0 {
                v ^= b;
                m ^= bm;
            }
        }
        let p = v & v.wrapping_neg();
        for (b, bm) in reduced.iter_mut() {
            if *b & p != 0 {
                *b ^= v;
                *bm ^= m;
            }
        }
        reduced.push((v, m));
    }
    let split = |x: u64| {
        reduced.iter().fold((x, 0u64), |(v, m), &(b, bm)| {
            if v & (b & b.wrapping_neg()) != 0 {
                (v ^ b, m ^ bm)
            } else {
                (v, m)
            }
        })
    };
    let mut groups: HashMap<u64, Vec<u64>> = HashMap::new();
    for &x in set {
        let (rest, _) = split(x as u64);
        groups.entry(rest).or_default().push(x as u64);
    }
    let Some(group) = groups.into_values().max_by_key(|g| (g.len(), g[0])) else {
        return vec![0];
    };
    let mut out: Vec<usize> = group
        .iter()
        .map(|&x| split(x ^ group[0]).1 as usize)
        .collect();
    out.sort_unstable();
    out
}

/// An independent set of the Cayley graph of `kq` made of cosets of a
/// largest subspace avoiding `kq`.
fn coset_seed(kq: &Bitmap) -> Vec<usize> {
    let basis = avoiding_basis(kq);
    let mut space = Bitmap::from_indices(kq.dim(), [0]);
    let mut blocked = kq.clone();
    for &b in &basis {
        space.or_assign(&space.translate(b));
        blocked.or_assign(&blocked.translate(b));
    }
    let mut set: Vec<usize> = space.iter_ones().collect();
    if kq.dim() > 16 {
        return set;
    }
    let mut cand = blocked.complement();
    cand.and_not_assign(&space);
    while let Some(x) = cand.first() {
        let coset = space.translate(x);
        set.extend(coset.iter_ones());
        cand.and_not_assign(&coset);
        cand.and_not_assign(&blocked.translate(x));
    }
    set
}

/// The size of a largest solution together with one such solution.
///
/// Requires `n <= limits.opt_n`.
pub fn opt_exact(a: &PartialMatrix, limits: &Limits) -> Result<(u64, SolutionSet)> {
    let n = a.n();
    ensure_limit(
        "n for exact opt",
        n,
        limits.opt_n.min(limits.bitmap_n).min(24),
    )?;
    let forbidden = ForbiddenSet::new(
        a,
        &Limits {
            bitmap_n: n,
            ..*limits
        },
    );
    let k = forbidden.bitmap().expect("materialized above");
    let members: Vec<u64> = k.iter_ones().map(|x| x as u64).collect();

    let w_basis = rref(members.iter().copied());
    let w_piv = pivots(&w_basis);
    let d = w_basis.len();
    let kd = Bitmap::from_indices(d, members.iter().map(|&x| coords(x, &w_piv) as usize));

    // Every element of the stabilizer maps the first generator to a generator.
    let stabilizer: Vec<u64> = match kd.first() {
        None => vec![0],
        Some(k0) => {
            let mut s: Vec<u64> = kd
                .iter_ones()
                .map(|x| (x ^ k0) as u64)
                .filter(|&v| kd.translate(v as usize) == kd)
                .collect();
            s.push(0);
            s
        }
    };
    let n_basis = rref(stabilizer.iter().copied());
    let n_piv = pivots(&n_basis);
    let free: Vec<usize> = (0..d).filter(|j| !n_piv.contains(j)).collect();
    let quotient = |x: u64| {
        let reduced =
            n_basis.iter().zip(&n_piv).fold(
                x,
                |acc, (&b, &p)| if (acc >> p) & 1 == 1 { acc ^ b } else { acc },
            );
        coords(reduced, &free)
    };
    let q = free.len();
    let kq = Bitmap::from_indices(q, kd.iter_ones().map(|x| quotient(x as u64) as usize));
    debug_assert!(!kq.get(0));

    // Each representative stands for this many members of the solution.
    let shift = n_basis.len() + n - d;
    let seed = coset_seed(&kq);
    let mut mis = Mis::new(kq.clone());
    if q > EXACT_LEVELS {
        mis.budget = Some(FIRST_BUDGET);
    }
    let reps = match mis.solve(seed.clone()) {
        Some(reps) => reps,
        None => doll_search(&kq, &seed),
    };

    let n_elems: Vec<u64> = (0..1u64 << n_basis.len())
        .map(|c| combine(c, &n_basis))
        .collect();
    let w_free: Vec<usize> = (0..n).filter(|j| !w_piv.contains(j)).collect();
    let mut witness = Vec::with_capacity(reps.len() << shift);
    for &c in &reps {
        let lifted = free
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, &f)| acc | (((c as u64 >> j) & 1) << f));
        for &nv in &n_elems {
            let x = combine(lifted ^ nv, &w_basis);
            for r in 0..1u64 << w_free.len() {
                let offset = coords_inverse(r, &w_free);
                witness.push(BitVec::from_u64(n, x ^ offset));
            }
        }
    }
    let witness = SolutionSet::new(n, witness).expect("lengths are n");
    let size = witness.len() as u64;
    assert_eq!(
        size,
        (reps.len() as u64) << shift,
        "representatives are distinct"
    );
    Ok((size, witness))
}

/// Places bit `j` of `c` at position `positions[j]`.
fn coords_inverse(c: u64, positions: &[usize]) -> u64 {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (j, &p)| acc | (((c >> j) & 1) << p))
}
