//! Code matrices: partial matrices whose solutions are exactly the binary
//! codes of minimum distance `r + 1`.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_limit, Error, Result};
use crate::gf2::BitVec;
use crate::limits::Limits;
use crate::partial::{PartialMatrix, PartialRow};
use crate::solutions::{ForbiddenSet, SolutionSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeMatrixSpec {
    pub n: usize,
    pub r: usize,
}

impl CodeMatrixSpec {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r == 0 || r >= n {
            return Err(Error::InvalidArgument(format!(
                "code matrix needs 1 <= r < n, got n = {n}, r = {r}"
            )));
        }
        Ok(Self { n, r })
    }

    /// `(r + 1) * C(n, r)`.
    pub fn row_count(&self) -> u128 {
        (self.r as u128 + 1) * binomial(self.n as u64, self.r as u64)
    }
}

/// `C(n, k)` in exact arithmetic; saturates at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication.
        acc = match acc.checked_mul(u128::from(n - i)) {
            Some(v) => v / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `|Ball(t)| = sum_{i <= t} C(n, i)`.
pub fn ball_size(n: u64, t: u64) -> u128 {
    (0..=t.min(n)).map(|i| binomial(n, i)).sum()
}

/// Advances `s` to the next `k`-subset of `0..n` in lexicographic order.
fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The `(n, r)` code matrix. For each `r`-subset `S` in lexicographic
/// order, a block of `r + 1` rows with stars off `S`: first all ones on
/// `S`, then a single 0 at each position of `S` in turn.
pub fn code_matrix(spec: CodeMatrixSpec, limits: &Limits) -> Result<PartialMatrix> {
    let CodeMatrixSpec { n, r } = CodeMatrixSpec::new(spec.n, spec.r)?;
    let count = spec.row_count();
    ensure_limit(
        "code matrix rows",
        usize::try_from(count).unwrap_or(usize::MAX),
        limits.code_rows,
    )?;
    let mut rows = Vec::with_capacity(count as usize);
    let mut s: Vec<usize> = (0..r).collect();
    loop {
        let support = BitVec::from_indices(n, s.iter().copied());
        let stars = support.not();
        rows.push(PartialRow::new(support.clone(), stars.clone())?);
        for &z in &s {
            let mut ones = support.clone();
            ones.set(z, false);
            rows.push(PartialRow::new(ones, stars.clone())?);
        }
        if !next_subset(&mut s, n) {
            break;
        }
    }
    PartialMatrix::new(n, rows)
}

/// All vectors of length `n` and weight at most `r`, in increasing integer
/// order.
pub fn ball(n: usize, r: usize, limits: &Limits) -> Result<Vec<BitVec>> {
    ensure_limit("n for ball enumeration", n, limits.bitmap_n)?;
    Ok((0..1u64 << n)
        .filter(|x| x.count_ones() as usize <= r)
        .map(|x| BitVec::from_u64(n, x))
        .collect())
}

/// Whether `K_A` of the code matrix is exactly the punctured ball.
pub fn verify_ka_is_ball(spec: CodeMatrixSpec, limits: &Limits) -> Result<bool> {
    ensure_limit("n for forbidden set bitmap", spec.n, limits.bitmap_n)?;
    let a = code_matrix(spec, limits)?;
    let k = ForbiddenSet::new(&a, limits);
    let bits = k.bitmap().expect("n within the bitmap limit");
    let inside: std::collections::HashSet<BitVec> = ball(spec.n, spec.r, limits)?
        .into_iter()
        .filter(|v| !v.is_zero())
        .collect();
    Ok(bits.count() == inside.len()
        && bits
            .iter_ones()
            .all(|x| inside.contains(&BitVec::from_u64(spec.n, x as u64))))
}

fn check_bound_args(n: usize, r: usize) -> Result<()> {
    if n > 64 || r > n {
        return Err(Error::InvalidArgument(format!(
            "bounds need r <= n <= 64, got n = {n}, r = {r}"
        )));
    }
    Ok(())
}

/// `floor(2^n / |Ball(t)|)` with `t = floor((r - 1) / 2)`: an upper bound on
/// codes of minimum distance `r + 1`.
pub fn hamming_bound(n: usize, r: usize) -> Result<u128> {
    check_bound_args(n, r)?;
    let t = r.saturating_sub(1) / 2;
    Ok((1u128 << n) / ball_size(n as u64, t as u64))
}

/// `floor(2^n / |Ball(r)|)`: a size guaranteed for linear codes of minimum
/// distance `r + 1`.
pub fn gv_bound(n: usize, r: usize) -> Result<u128> {
    check_bound_args(n, r)?;
    Ok((1u128 << n) / ball_size(n as u64, r as u64))
}

/// Least Hamming distance between two members; `None` below two members.
pub fn min_distance(l: &SolutionSet) -> Option<usize> {
    let m = l.members();
    (0..m.len())
        .flat_map(|i| (i + 1..m.len()).map(move |j| (i, j)))
        .map(|(i, j)| m[i].xor(&m[j]).weight())
        .min()
}
