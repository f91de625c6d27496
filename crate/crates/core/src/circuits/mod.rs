//! Depth-2 circuits with arbitrary gates and direct input-output wires.
//!
//! Each middle gate reads a declared set of inputs; each output gate reads
//! declared inputs directly plus declared middle gates. Gates are truth
//! tables indexed little-endian over their wires, direct inputs first.

mod linear;
pub mod random;
mod rigidity;
mod table;

pub use linear::{
    extract_linear_operator, linearize, linearize_middle, matrix_of, metrics, CircuitMetrics,
    LinearDepth2Circuit,
};
pub use rigidity::{rigidity, rigidity_within};
pub use table::{TruthTable, MAX_ARITY};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiddleGate {
    pub inputs: Vec<usize>,
    pub table: TruthTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputGate {
    pub direct: Vec<usize>,
    pub middle: Vec<usize>,
    pub table: TruthTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Depth2Circuit {
    n: usize,
    middle: Vec<MiddleGate>,
    outputs: Vec<OutputGate>,
}

fn check_wires(wires: &[usize], bound: usize, what: &str) -> Result<()> {
    for (k, &w) in wires.iter().enumerate() {
        if w >= bound {
            return Err(Error::InvalidCircuit(format!(
                "{what} wire {w} out of range 0..{bound}"
            )));
        }
        if wires[..k].contains(&w) {
            return Err(Error::InvalidCircuit(format!(
                "{what} wire {w} declared twice"
            )));
        }
    }
    Ok(())
}

impl Depth2Circuit {
    pub fn new(n: usize, middle: Vec<MiddleGate>, outputs: Vec<OutputGate>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCircuit(
                "a circuit needs at least one input".into(),
            ));
        }
        for (k, g) in middle.iter().enumerate() {
            check_wires(&g.inputs, n, "input")?;
            if g.table.arity() != g.inputs.len() {
                return Err(Error::InvalidCircuit(format!(
                    "middle gate {k} has {} wires but a table of arity {}",
                    g.inputs.len(),
                    g.table.arity()
                )));
            }
        }
        for (i, g) in outputs.iter().enumerate() {
            check_wires(&g.direct, n, "input")?;
            check_wires(&g.middle, middle.len(), "middle")?;
            let wires = g.direct.len() + g.middle.len();
            if g.table.arity() != wires {
                return Err(Error::InvalidCircuit(format!(
                    "output gate {i} has {wires} wires but a table of arity {}",
                    g.table.arity()
                )));
            }
        }
        Ok(Self { n, middle, outputs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.outputs.len()
    }

    pub fn width(&self) -> usize {
        self.middle.len()
    }

    /// Largest number of direct input wires into one output.
    pub fn degree(&self) -> usize {
        self.outputs
            .iter()
            .map(|g| g.direct.len())
            .max()
            .unwrap_or(0)
    }

    pub fn middle(&self) -> &[MiddleGate] {
        &self.middle
    }

    pub fn outputs(&self) -> &[OutputGate] {
        &self.outputs
    }

    /// The middle layer's values at `x`.
    pub fn middle_values(&self, x: &BitVec) -> Vec<bool> {
        self.middle
            .iter()
            .map(|g| {
                let idx = g
                    .inputs
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (t, &j)| acc | (usize::from(x.get(j)) << t));
                g.table.get(idx)
            })
            .collect()
    }

    pub fn evaluate(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.n, "input length must equal n");
        let h = self.middle_values(x);
        let bits: Vec<bool> = self
            .outputs
            .iter()
            .map(|g| {
                let d = g.direct.len();
                let mut idx = 0usize;
                for (t, &j) in g.direct.iter().enumerate() {
                    idx |= usize::from(x.get(j)) << t;
                }
                for (u, &k) in g.middle.iter().enumerate() {
                    idx |= usize::from(h[k]) << (d + u);
                }
                g.table.get(idx)
            })
            .collect();
        BitVec::from_bools(&bits)
    }

    /// The `.ckt` document: JSON with fields in a fixed order.
    pub fn to_json(&self) -> String {
        let file = CircuitFile {
            n: self.n,
            middle: self
                .middle
                .iter()
                .map(|g| MiddleFile {
                    inputs: g.inputs.clone(),
                    table: g.table.to_hex(),
                })
                .collect(),
            outputs: self
                .outputs
                .iter()
                .map(|g| OutputFile {
                    direct: g.direct.clone(),
                    middle: g.middle.clone(),
                    table: g.table.to_hex(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("circuit files always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CircuitFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let middle = file
            .middle
            .into_iter()
            .map(|g| {
                Ok(MiddleGate {
                    table: TruthTable::from_hex(g.inputs.len(), &g.table)?,
                    inputs: g.inputs,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let outputs = file
            .outputs
            .into_iter()
            .map(|g| {
                Ok(OutputGate {
                    table: TruthTable::from_hex(g.direct.len() + g.middle.len(), &g.table)?,
                    direct: g.direct,
                    middle: g.middle,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.n, middle, outputs)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitFile {
    n: usize,
    middle: Vec<MiddleFile>,
    outputs: Vec<OutputFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MiddleFile {
    inputs: Vec<usize>,
    table: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputFile {
    direct: Vec<usize>,
    middle: Vec<usize>,
    table: String,
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::gf2::Gf2Matrix;
    use crate::partial::PartialMatrix;

    /// A circuit for `M x` with direct wires exactly at the stars of `a`:
    /// each output reads its starred inputs directly and one middle gate
    /// computing the parity of its non-star part.
    pub(crate) fn circuit_for(a: &PartialMatrix, m: &Gf2Matrix) -> Depth2Circuit {
        assert!(a.is_completion(m));
        let n = a.n();
        let mut middle = Vec::new();
        let mut outputs = Vec::new();
        for (i, row) in a.rows().iter().enumerate() {
            let stars = row.star_positions();
            let fixed: Vec<usize> = row.ones().iter_ones().collect();
            let starred_ones: u64 = stars
                .iter()
                .enumerate()
                .filter(|(_, &j)| m.get(i, j))
                .fold(0, |acc, (t, _)| acc | (1 << t));
            middle.push(MiddleGate {
                table: TruthTable::parity(fixed.len()),
                inputs: fixed,
            });
            let arity = stars.len() + 1;
            outputs.push(OutputGate {
                table: TruthTable::parity_of(arity, starred_ones | (1 << stars.len())),
                direct: stars,
                middle: vec![i],
            });
        }
        Depth2Circuit::new(n, middle, outputs).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::circuit_for;
    use super::*;
    use crate::gf2::Gf2Matrix;
    use crate::partial::fixtures::a1;

    fn identity_circuit(n: usize) -> Depth2Circuit {
        let outputs = (0..n)
            .map(|j| OutputGate {
                direct: vec![j],
                middle: vec![],
                table: TruthTable::parity(1),
            })
            .collect();
        Depth2Circuit::new(n, vec![], outputs).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let id = identity_circuit(3);
        for x in 0..8 {
            let v = BitVec::from_u64(3, x);
            assert_eq!(id.evaluate(&v), v);
        }
        let b = Gf2Matrix::from_strs(&["110", "011"]).unwrap();
        let wires = Depth2Circuit::new(
            3,
            vec![],
            b.rows()
                .iter()
                .map(|r| OutputGate {
                    direct: r.iter_ones().collect(),
                    middle: vec![],
                    table: TruthTable::parity(2),
                })
                .collect(),
        )
        .unwrap();
        for x in 0..8 {
            let v = BitVec::from_u64(3, x);
            assert_eq!(wires.evaluate(&v), b.mul_vec(&v));
        }
        let m = Gf2Matrix::from_strs(&["100001", "011100", "011100"]).unwrap();
        let c = circuit_for(&a1(), &m);
        assert_eq!(c.evaluate(&BitVec::zeros(6)), BitVec::zeros(3));
        for x in 0..64 {
            let v = BitVec::from_u64(6, x);
            assert_eq!(c.evaluate(&v), m.mul_vec(&v));
        }
    }

    #[test]
    fn validation() {
        let t = TruthTable::parity(1);
        let bad = Depth2Circuit::new(
            2,
            vec![],
            vec![OutputGate {
                direct: vec![2],
                middle: vec![],
                table: t.clone(),
            }],
        );
        assert!(bad.is_err());
        let arity = Depth2Circuit::new(
            2,
            vec![],
            vec![OutputGate {
                direct: vec![0, 1],
                middle: vec![],
                table: t,
            }],
        );
        assert!(arity.is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = Gf2Matrix::from_strs(&["100001", "011100", "011100"]).unwrap();
        let c = circuit_for(&a1(), &m);
        let text = c.to_json();
        assert_eq!(Depth2Circuit::from_json(&text).unwrap(), c);
        assert!(text.find("\"n\"").unwrap() < text.find("\"middle\"").unwrap());
        assert!(Depth2Circuit::from_json("{\"n\": 1}").is_err());
    }
}
