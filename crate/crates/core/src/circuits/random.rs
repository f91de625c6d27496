//! Seeded random depth-2 circuits that compute linear operators.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Depth2Circuit, MiddleGate, OutputGate, TruthTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    /// Parity gates everywhere.
    Linear,
    /// Middle gates output a scrambled image `pi(L x)`; outputs undo `pi`.
    Scrambled,
    /// Parity outputs over middle gates `<l_k, x> + z_k q(x)` where `z` is in
    /// the kernel of the output combination and `q` is nonlinear.
    Perturbed,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub kind: FixtureKind,
    pub circuit: Depth2Circuit,
}

fn random_mask<R: Rng + ?Sized>(rng: &mut R, bits: usize, density: f64) -> u64 {
    (0..bits)
        .filter(|_| rng.gen_bool(density))
        .fold(0u64, |acc, t| acc | (1 << t))
}

fn bits_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&t| (mask >> t) & 1 == 1).collect()
}

fn parity(x: u64) -> bool {
    x.count_ones() % 2 == 1
}

/// The input mask that sets `wires` according to the gate assignment `idx`.
fn gather(idx: usize, wires: &[usize]) -> u64 {
    wires
        .iter()
        .enumerate()
        .filter(|(t, _)| (idx >> t) & 1 == 1)
        .fold(0u64, |acc, (_, &j)| acc | (1 << j))
}

/// A gate over `wires` computing `f` of the input mask.
fn gate_table(wires: &[usize], f: impl Fn(u64) -> bool) -> TruthTable {
    TruthTable::from_fn(wires.len(), |idx| f(gather(idx, wires)))
}

/// A random circuit with `n` inputs, `m` outputs and `w` middle gates that
/// computes a linear operator. Needs `n <= 16` and `w <= 4`.
pub fn random_linear_circuit<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    w: usize,
    kind: FixtureKind,
) -> Fixture {
    assert!((1..=16).contains(&n) && w <= 4);
    let direct: Vec<Vec<usize>> = (0..m).map(|_| bits_of(random_mask(rng, n, 0.3))).collect();
    let lin: Vec<u64> = (0..w).map(|_| random_mask(rng, n, 0.5)).collect();
    let coeff: Vec<u64> = direct
        .iter()
        .map(|d| random_mask(rng, d.len(), 0.5))
        .collect();

    let circuit = match kind {
        FixtureKind::Linear => {
            let middle = lin
                .iter()
                .map(|&l| {
                    let inputs = bits_of(l);
                    MiddleGate {
                        table: TruthTable::parity(inputs.len()),
                        inputs,
                    }
                })
                .collect();
            let outputs = direct
                .iter()
                .zip(&coeff)
                .map(|(d, &c)| {
                    let mids = bits_of(random_mask(rng, w, 0.6));
                    let mask = c | (((1u64 << mids.len()) - 1) << d.len());
                    OutputGate {
                        table: TruthTable::parity_of(d.len() + mids.len(), mask),
                        direct: d.clone(),
                        middle: mids,
                    }
                })
                .collect();
            Depth2Circuit::new(n, middle, outputs)
        }
        FixtureKind::Scrambled => {
            let size = 1usize << w;
            let mut pi: Vec<usize> = (0..size).collect();
            pi.shuffle(rng);
            let mut inv = vec![0usize; size];
            for (y, &p) in pi.iter().enumerate() {
                inv[p] = y;
            }
            let inputs = bits_of(lin.iter().fold(0, |a, &l| a | l));
            let middle = (0..w)
                .map(|k| MiddleGate {
                    table: gate_table(&inputs, |x| {
                        let y = lin.iter().enumerate().fold(0usize, |acc, (t, &l)| {
                            acc | (usize::from(parity(x & l)) << t)
                        });
                        (pi[y] >> k) & 1 == 1
                    }),
                    inputs: inputs.clone(),
                })
                .collect();
            let outputs = direct
                .iter()
                .zip(&coeff)
                .map(|(d, &c)| {
                    let sel = random_mask(rng, w, 0.6);
                    let dl = d.len();
                    OutputGate {
                        table: TruthTable::from_fn(dl + w, |idx| {
                            let h = idx >> dl;
                            parity(idx as u64 & c) ^ parity(inv[h] as u64 & sel)
                        }),
                        direct: d.clone(),
                        middle: (0..w).collect(),
                    }
                })
                .collect();
            Depth2Circuit::new(n, middle, outputs)
        }
        FixtureKind::Perturbed => {
            // z != 0 with <c_i, z> = 0 for every output combination c_i.
            let z = if w == 0 {
                0
            } else {
                rng.gen_range(1..1u64 << w)
            };
            let pivot = z.trailing_zeros();
            let (p, q) = if n >= 2 {
                let mut pair = (0..n).collect::<Vec<_>>();
                pair.shuffle(rng);
                (pair[0], pair[1])
            } else {
                (0, 0)
            };
            let middle = lin
                .iter()
                .enumerate()
                .map(|(k, &l)| {
                    let bump = (z >> k) & 1 == 1;
                    let support = if bump { l | (1 << p) | (1 << q) } else { l };
                    let inputs = bits_of(support);
                    MiddleGate {
                        table: gate_table(&inputs, |x| {
                            parity(x & l) ^ (bump && (x >> p) & 1 == 1 && (x >> q) & 1 == 1)
                        }),
                        inputs,
                    }
                })
                .collect();
            let outputs = direct
                .iter()
                .zip(&coeff)
                .map(|(d, &c)| {
                    let mut sel = random_mask(rng, w, 0.6);
                    if w > 0 && parity(sel & z) {
                        sel ^= 1 << pivot;
                    }
                    let dl = d.len();
                    OutputGate {
                        table: TruthTable::parity_of(dl + w, c | (sel << dl)),
                        direct: d.clone(),
                        middle: (0..w).collect(),
                    }
                })
                .collect();
            Depth2Circuit::new(n, middle, outputs)
        }
    };
    Fixture {
        kind,
        circuit: circuit.expect("generated wires are in range"),
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::circuits::extract_linear_operator;
    use crate::limits::Limits;

    #[test]
    fn fixtures_are_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let l = Limits::default();
        for kind in [
            FixtureKind::Linear,
            FixtureKind::Scrambled,
            FixtureKind::Perturbed,
        ] {
            for _ in 0..30 {
                let n = rng.gen_range(1..=7);
                let m = rng.gen_range(1..=n);
                let w = rng.gen_range(0..=3);
                let f = random_linear_circuit(&mut rng, n, m, w, kind);
                assert_eq!(f.circuit.width(), w);
                assert!(
                    extract_linear_operator(&f.circuit, &l).unwrap().is_some(),
                    "{kind:?}"
                );
            }
        }
    }

    #[test]
    fn perturbed_middle_is_nonlinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = random_linear_circuit(&mut rng, 5, 3, 3, FixtureKind::Perturbed);
        assert!(f
            .circuit
            .middle()
            .iter()
            .any(|h| h.table.as_parity().is_none()));
    }
}
