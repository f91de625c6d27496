use serde::Serialize;

use super::{Depth2Circuit, MiddleGate, OutputGate, TruthTable, MAX_ARITY};
use crate::error::{ensure_limit, Error, Result};
use crate::gf2::{BitVec, Echelon, Gf2Matrix};
use crate::limits::Limits;
use crate::partial::{PartialMatrix, PartialRow};

/// Either the matrix of `F` or an input where `F(x) != M x` for the matrix
/// `M` read off the unit vectors.
fn operator_or_witness(f: &Depth2Circuit, limits: &Limits) -> Result<Result<Gf2Matrix, BitVec>> {
    let n = f.n();
    ensure_limit("circuit inputs", n, limits.circuit_n)?;
    let columns: Vec<BitVec> = (0..n).map(|j| f.evaluate(&BitVec::unit(n, j))).collect();
    let m = Gf2Matrix::new(f.m(), columns.clone())
        .expect("every evaluation has m bits")
        .transpose();
    // Walk inputs in Gray code order so M x is updated by one column per step.
    let mut x = BitVec::zeros(n);
    let mut mx = BitVec::zeros(f.m());
    for step in 0..1u64 << n {
        if step > 0 {
            let j = step.trailing_zeros() as usize;
            x.flip(j);
            mx.xor_assign(&columns[j]);
        }
        if f.evaluate(&x) != mx {
            return Ok(Err(x));
        }
    }
    Ok(Ok(m))
}

/// The matrix `M` with `F(x) = M x` on every input, or `None` when `F` is
/// not linear.
pub fn extract_linear_operator(f: &Depth2Circuit, limits: &Limits) -> Result<Option<Gf2Matrix>> {
    Ok(operator_or_witness(f, limits)?.ok())
}

fn linear_operator(f: &Depth2Circuit, limits: &Limits) -> Result<Gf2Matrix> {
    operator_or_witness(f, limits)?.map_err(|input| Error::NotLinear { input })
}

fn star_pattern(f: &Depth2Circuit, m: Option<&Gf2Matrix>) -> PartialMatrix {
    let n = f.n();
    let rows = f
        .outputs()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let stars = BitVec::from_indices(n, g.direct.iter().copied());
            let ones = m.map_or_else(|| BitVec::zeros(n), |m| m.row(i).and_not(&stars));
            PartialRow::new(ones, stars).expect("ones are disjoint from stars")
        })
        .collect();
    PartialMatrix::new(n, rows).expect("rows have length n")
}

/// `A_F`: the matrix of `F` with a star wherever an output has a direct wire.
pub fn matrix_of(f: &Depth2Circuit, limits: &Limits) -> Result<PartialMatrix> {
    let m = linear_operator(f, limits)?;
    Ok(star_pattern(f, Some(&m)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CircuitMetrics {
    pub width: usize,
    pub degree: usize,
    /// Largest matching formed by direct input-output wires.
    pub match_size: usize,
}

pub fn metrics(f: &Depth2Circuit) -> CircuitMetrics {
    CircuitMetrics {
        width: f.width(),
        degree: f.degree(),
        match_size: star_pattern(f, None).line_cover_number(),
    }
}

/// A depth-2 circuit computing `x -> D x + C (H x)` where every gate is a
/// parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearDepth2Circuit {
    n: usize,
    direct_wires: Vec<Vec<usize>>,
    direct: Gf2Matrix,
    middle: Gf2Matrix,
    combine: Gf2Matrix,
}

impl LinearDepth2Circuit {
    /// `direct_wires[i]` lists the inputs wired into output `i`; row `i` of
    /// `direct` must be supported on them.
    pub fn new(
        direct_wires: Vec<Vec<usize>>,
        direct: Gf2Matrix,
        middle: Gf2Matrix,
        combine: Gf2Matrix,
    ) -> Result<Self> {
        let n = direct.ncols();
        let (m, w) = (direct.nrows(), middle.nrows());
        if middle.ncols() != n || combine.nrows() != m || combine.ncols() != w {
            return Err(Error::Dimension(format!(
                "direct {m}x{n}, middle {w}x{}, combine {}x{}",
                middle.ncols(),
                combine.nrows(),
                combine.ncols()
            )));
        }
        if direct_wires.len() != m {
            return Err(Error::Dimension(format!(
                "{} direct wire lists for {m} outputs",
                direct_wires.len()
            )));
        }
        for (i, wires) in direct_wires.iter().enumerate() {
            if wires.iter().any(|&j| j >= n) {
                return Err(Error::InvalidCircuit(format!(
                    "output {i} wired to a missing input"
                )));
            }
            let allowed = BitVec::from_indices(n, wires.iter().copied());
            if !direct.row(i).is_subset(&allowed) {
                return Err(Error::InvalidCircuit(format!(
                    "direct row {i} uses inputs without a wire"
                )));
            }
        }
        Ok(Self {
            n,
            direct_wires,
            direct,
            middle,
            combine,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.direct.nrows()
    }

    pub fn width(&self) -> usize {
        self.middle.nrows()
    }

    pub fn degree(&self) -> usize {
        self.direct_wires.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn direct_wires(&self) -> &[Vec<usize>] {
        &self.direct_wires
    }

    pub fn direct(&self) -> &Gf2Matrix {
        &self.direct
    }

    pub fn middle(&self) -> &Gf2Matrix {
        &self.middle
    }

    pub fn combine(&self) -> &Gf2Matrix {
        &self.combine
    }

    pub fn evaluate(&self, x: &BitVec) -> BitVec {
        let h = self.middle.mul_vec(x);
        self.direct.mul_vec(x).xor(&self.combine.mul_vec(&h))
    }

    /// `D + C H`.
    pub fn matrix(&self) -> Gf2Matrix {
        let ch = self
            .combine
            .mul(&self.middle)
            .expect("combine has w columns");
        self.direct.add(&ch).expect("both are m x n")
    }

    /// The same circuit with explicit parity gates. Outputs keep their full
    /// wire lists and read the middle gates they combine.
    pub fn to_circuit(&self) -> Result<Depth2Circuit> {
        let too_wide = |what: &str, k: usize, arity: usize| {
            Error::InvalidCircuit(format!(
                "{what} {k} would need {arity} wires, above {MAX_ARITY}"
            ))
        };
        let mut middle = Vec::with_capacity(self.width());
        for (k, b) in self.middle.rows().iter().enumerate() {
            let inputs: Vec<usize> = b.iter_ones().collect();
            if inputs.len() > MAX_ARITY {
                return Err(too_wide("middle gate", k, inputs.len()));
            }
            middle.push(MiddleGate {
                table: TruthTable::parity(inputs.len()),
                inputs,
            });
        }
        let mut outputs = Vec::with_capacity(self.m());
        for (i, wires) in self.direct_wires.iter().enumerate() {
            let mids: Vec<usize> = self.combine.row(i).iter_ones().collect();
            let arity = wires.len() + mids.len();
            if arity > MAX_ARITY {
                return Err(too_wide("output gate", i, arity));
            }
            let direct_mask = wires
                .iter()
                .enumerate()
                .filter(|(_, &j)| self.direct.get(i, j))
                .fold(0u64, |acc, (t, _)| acc | (1 << t));
            let middle_mask = ((1u64 << mids.len()) - 1) << wires.len();
            outputs.push(OutputGate {
                direct: wires.clone(),
                middle: mids,
                table: TruthTable::parity_of(arity, direct_mask | middle_mask),
            });
        }
        Depth2Circuit::new(self.n, middle, outputs)
    }
}

/// An equivalent linear circuit of width `min_rank(A_F)` whose direct wires
/// are those of `F`.
///
/// With `B` a min-rank completion of `A_F`, the middle gates compute a basis
/// of the rows of `B`, and output `i` adds `(m_i + b_i) x`, which only reads
/// starred positions of row `i`.
pub fn linearize(f: &Depth2Circuit, limits: &Limits) -> Result<LinearDepth2Circuit> {
    let m = linear_operator(f, limits)?;
    let a = star_pattern(f, Some(&m));
    let (r, b) = a.min_rank_completion();
    let n = f.n();

    let mut echelon = Echelon::new(n);
    let chosen: Vec<BitVec> = b
        .rows()
        .iter()
        .filter(|row| echelon.insert((*row).clone()))
        .cloned()
        .collect();
    debug_assert_eq!(chosen.len(), r);
    let middle = Gf2Matrix::new(n, chosen).expect("rows of B have length n");
    let basis_t = middle.transpose();

    let mut direct = Vec::with_capacity(f.m());
    let mut combine = Vec::with_capacity(f.m());
    for (i, bi) in b.rows().iter().enumerate() {
        direct.push(m.row(i).xor(bi));
        let coords = if r == 0 {
            BitVec::zeros(0)
        } else {
            basis_t
                .solve(bi)
                .expect("b_i lies in the span of the chosen rows")
        };
        combine.push(coords);
    }
    LinearDepth2Circuit::new(
        f.outputs().iter().map(|g| g.direct.clone()).collect(),
        Gf2Matrix::new(n, direct).expect("length n"),
        middle,
        Gf2Matrix::new(r, combine).expect("length r"),
    )
}

/// Replaces every middle gate `h_k` by the parity `x -> sum_j x_j h_k(e_j)`.
///
/// Needs outputs that are parities of (some of) their wires and a circuit
/// that is linear as a whole. Output gates are kept; a middle gate's wires
/// become the inputs `j` with `h_k(e_j) = 1`.
pub fn linearize_middle(f: &Depth2Circuit, limits: &Limits) -> Result<Depth2Circuit> {
    for (i, g) in f.outputs().iter().enumerate() {
        if g.table.as_parity().is_none() {
            return Err(Error::InvalidCircuit(format!(
                "output gate {i} is not a parity of its wires"
            )));
        }
    }
    linear_operator(f, limits)?;
    let n = f.n();
    let images: Vec<Vec<bool>> = (0..n)
        .map(|j| f.middle_values(&BitVec::unit(n, j)))
        .collect();
    let middle = (0..f.width())
        .map(|k| {
            let inputs: Vec<usize> = (0..n).filter(|&j| images[j][k]).collect();
            MiddleGate {
                table: TruthTable::parity(inputs.len()),
                inputs,
            }
        })
        .collect();
    Depth2Circuit::new(n, middle, f.outputs().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::fixtures::circuit_for;
    use crate::partial::fixtures::a1;

    fn all_inputs(n: usize) -> impl Iterator<Item = BitVec> {
        (0..1u64 << n).map(move |x| BitVec::from_u64(n, x))
    }

    fn same_map(f: &Depth2Circuit, g: impl Fn(&BitVec) -> BitVec) -> bool {
        all_inputs(f.n()).all(|x| f.evaluate(&x) == g(&x))
    }

    fn wire_circuit(b: &Gf2Matrix) -> Depth2Circuit {
        let outputs = b
            .rows()
            .iter()
            .map(|r| {
                let direct: Vec<usize> = r.iter_ones().collect();
                OutputGate {
                    table: TruthTable::parity(direct.len()),
                    direct,
                    middle: vec![],
                }
            })
            .collect();
        Depth2Circuit::new(b.ncols(), vec![], outputs).unwrap()
    }

    /// Outputs read every middle gate; no direct wires.
    fn through_middle(b: &Gf2Matrix) -> Depth2Circuit {
        let n = b.ncols();
        let middle = b
            .rows()
            .iter()
            .map(|r| {
                let inputs: Vec<usize> = r.iter_ones().collect();
                MiddleGate {
                    table: TruthTable::parity(inputs.len()),
                    inputs,
                }
            })
            .collect();
        let outputs = (0..b.nrows())
            .map(|i| OutputGate {
                direct: vec![],
                middle: vec![i],
                table: TruthTable::parity(1),
            })
            .collect();
        Depth2Circuit::new(n, middle, outputs).unwrap()
    }

    fn m_prime() -> Gf2Matrix {
        Gf2Matrix::from_strs(&["100001", "011100", "011100"]).unwrap()
    }

    #[test]
    fn extract_examples() {
        let l = Limits::default();
        let b = Gf2Matrix::from_strs(&["110", "011"]).unwrap();
        assert_eq!(
            extract_linear_operator(&wire_circuit(&b), &l).unwrap(),
            Some(b)
        );
        let and = Depth2Circuit::new(
            2,
            vec![],
            vec![OutputGate {
                direct: vec![0, 1],
                middle: vec![],
                table: TruthTable::from_fn(2, |i| i == 3),
            }],
        )
        .unwrap();
        assert_eq!(extract_linear_operator(&and, &l).unwrap(), None);
        match matrix_of(&and, &l) {
            Err(Error::NotLinear { input }) => assert_eq!(input.to_string(), "11"),
            other => panic!("{other:?}"),
        }
        let big = Depth2Circuit::new(17, vec![], vec![]).unwrap();
        assert!(matches!(
            extract_linear_operator(&big, &l),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn matrix_of_examples() {
        let l = Limits::default();
        let b = Gf2Matrix::from_strs(&["110", "011", "101"]).unwrap();
        let a = matrix_of(&through_middle(&b), &l).unwrap();
        assert!(a.is_star_free());
        assert_eq!(a.canonical_completion(), b);
        let all = matrix_of(
            &wire_circuit(&Gf2Matrix::from_strs(&["111", "111"]).unwrap()),
            &l,
        )
        .unwrap();
        assert_eq!(all, PartialMatrix::all_stars(2, 3).unwrap());
        let f = circuit_for(&a1(), &m_prime());
        assert_eq!(matrix_of(&f, &l).unwrap(), a1());
    }

    #[test]
    fn linearize_examples() {
        let l = Limits::default();
        let b = Gf2Matrix::from_strs(&["110", "011", "101"]).unwrap();
        let f = through_middle(&b);
        let lin = linearize(&f, &l).unwrap();
        assert_eq!(lin.width(), b.rank());
        assert!(lin.width() <= f.width());
        assert_eq!(lin.matrix(), b);
        assert!(same_map(&f, |x| lin.evaluate(x)));

        let f = circuit_for(&a1(), &m_prime());
        let lin = linearize(&f, &l).unwrap();
        assert_eq!(lin.width(), 2);
        assert_eq!(lin.degree(), f.degree());
        assert!(same_map(&f, |x| lin.evaluate(x)));
        let back = lin.to_circuit().unwrap();
        assert_eq!(back.width(), 2);
        assert!(same_map(&f, |x| back.evaluate(x)));
    }

    #[test]
    fn metrics_examples() {
        let none = through_middle(&Gf2Matrix::identity(3));
        assert_eq!(metrics(&none).match_size, 0);
        let diag = wire_circuit(&Gf2Matrix::identity(4));
        assert_eq!(
            metrics(&diag),
            CircuitMetrics {
                width: 0,
                degree: 1,
                match_size: 4
            }
        );
        let f = circuit_for(&a1(), &m_prime());
        assert_eq!(metrics(&f).match_size, a1().line_cover_number());
    }

    fn majority(i: usize) -> bool {
        i.count_ones() >= 2
    }

    #[test]
    fn linearize_middle_examples() {
        let l = Limits::default();
        let b = Gf2Matrix::from_strs(&["110", "011"]).unwrap();
        let f = through_middle(&b);
        let g = linearize_middle(&f, &l).unwrap();
        assert_eq!(g.middle(), f.middle());

        // A dead AND gate next to a live parity.
        let f = Depth2Circuit::new(
            2,
            vec![
                MiddleGate {
                    inputs: vec![0, 1],
                    table: TruthTable::from_fn(2, |i| i == 3),
                },
                MiddleGate {
                    inputs: vec![0, 1],
                    table: TruthTable::parity(2),
                },
            ],
            vec![OutputGate {
                direct: vec![],
                middle: vec![1],
                table: TruthTable::parity(1),
            }],
        )
        .unwrap();
        let g = linearize_middle(&f, &l).unwrap();
        assert!(same_map(&f, |x| g.evaluate(x)));
        assert!(g.middle().iter().all(|h| h.table.as_parity().is_some()));

        // maj(x) and maj(x) + x_0 cancel to x_0.
        let f = Depth2Circuit::new(
            3,
            vec![
                MiddleGate {
                    inputs: vec![0, 1, 2],
                    table: TruthTable::from_fn(3, majority),
                },
                MiddleGate {
                    inputs: vec![0, 1, 2],
                    table: TruthTable::from_fn(3, |i| majority(i) ^ (i & 1 == 1)),
                },
            ],
            vec![OutputGate {
                direct: vec![2],
                middle: vec![0, 1],
                table: TruthTable::parity(3),
            }],
        )
        .unwrap();
        assert_eq!(
            extract_linear_operator(&f, &l).unwrap(),
            Some(Gf2Matrix::from_strs(&["101"]).unwrap())
        );
        let g = linearize_middle(&f, &l).unwrap();
        assert_eq!((g.width(), g.degree()), (f.width(), f.degree()));
        assert!(same_map(&f, |x| g.evaluate(x)));
    }

    #[test]
    fn linearize_middle_rejects() {
        let l = Limits::default();
        let f = Depth2Circuit::new(
            2,
            vec![],
            vec![OutputGate {
                direct: vec![0, 1],
                middle: vec![],
                table: TruthTable::from_fn(2, |i| i == 3),
            }],
        )
        .unwrap();
        assert!(matches!(
            linearize_middle(&f, &l),
            Err(Error::InvalidCircuit(_))
        ));
        let f = Depth2Circuit::new(
            2,
            vec![MiddleGate {
                inputs: vec![0, 1],
                table: TruthTable::from_fn(2, |i| i == 3),
            }],
            vec![OutputGate {
                direct: vec![],
                middle: vec![0],
                table: TruthTable::parity(1),
            }],
        )
        .unwrap();
        assert!(matches!(
            linearize_middle(&f, &l),
            Err(Error::NotLinear { .. })
        ));
    }

    #[test]
    fn linear_circuit_validation() {
        let d = Gf2Matrix::from_strs(&["11"]).unwrap();
        let bad = LinearDepth2Circuit::new(
            vec![vec![0]],
            d,
            Gf2Matrix::zeros(0, 2),
            Gf2Matrix::zeros(1, 0),
        );
        assert!(bad.is_err());
    }
}
