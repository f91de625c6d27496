//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use minrank::circuits::random::{random_linear_circuit, FixtureKind};
use minrank::circuits::{
    linearize, linearize_middle, matrix_of, metrics, rigidity, rigidity_within, Depth2Circuit,
};
use minrank::codes::{
    code_matrix, gv_bound, hamming_bound, min_distance, verify_ka_is_ball, CodeMatrixSpec,
};
use minrank::pmx::emit_pmx;
use minrank::solutions::{
    brute_force_opt_tiny, conjecture_epsilon, is_solution, lin_exact, max_avoiding_subspace_dim,
    opt_exact, separating_min_rank, struct2_check, ForbiddenSet, SolutionSet,
};
use minrank::{BitVec, Entry, Gf2Matrix, Limits, PartialMatrix, PartialRow, Subspace};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

/// Name, time budget in seconds, and the check.
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    ensure(got == want, || {
        format!("{what}: got {got:?}, want {want:?}")
    })
}

fn lim() -> Limits {
    Limits::default()
}

fn opt(a: &PartialMatrix) -> u64 {
    opt_exact(a, &lim()).expect("opt within limits").0
}

/// A random `m x n` partial matrix; entries are stars with probability
/// `star_p`, rows keep at most `row_stars` stars.
fn random_partial(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
    star_p: f64,
    row_stars: usize,
) -> PartialMatrix {
    let rows = (0..m)
        .map(|_| {
            let mut stars = 0;
            let entries: Vec<Entry> = (0..n)
                .map(|_| {
                    if stars < row_stars && rng.gen_bool(star_p) {
                        stars += 1;
                        Entry::Star
                    } else if rng.gen_bool(0.5) {
                        Entry::One
                    } else {
                        Entry::Zero
                    }
                })
                .collect();
            PartialRow::from_entries(&entries)
        })
        .collect();
    PartialMatrix::new(n, rows).unwrap()
}

fn random_shape(rng: &mut ChaCha8Rng, max_m: usize, max_n: usize) -> PartialMatrix {
    let m = rng.gen_range(1..=max_m);
    let n = rng.gen_range(1..=max_n);
    let p = [0.1, 0.25, 0.4][rng.gen_range(0..3)];
    let row_stars = if rng.gen_bool(0.25) { 1 } else { n };
    random_partial(rng, m, n, p, row_stars)
}

fn all_vectors(n: usize) -> impl Iterator<Item = BitVec> {
    (0..1u64 << n).map(move |x| BitVec::from_u64(n, x))
}

fn criterion_1() -> Check {
    let l = lim();
    let a = PartialMatrix::from_strs(&["10*0*1", "*111**", "0**1**"]).unwrap();
    let shown = Gf2Matrix::from_strs(&["100001", "011100", "011100"]).unwrap();
    ensure(a.is_completion(&shown), || {
        "M' is not a completion of A1".into()
    })?;
    expect_eq("min_rank", a.min_rank(), 2)?;
    expect_eq("rank(M')", shown.rank(), 2)?;
    expect_eq("col_min_rank", a.col_min_rank(&l).unwrap(), 2)?;
    expect_eq("lin", lin_exact(&a, &l).unwrap(), 16)?;
    let (o, w) = opt_exact(&a, &l).unwrap();
    expect_eq("opt", o, 16)?;
    ensure(is_solution(&a, &w), || {
        "opt witness is not a solution".into()
    })?;
    let eps = conjecture_epsilon(&a, &l)
        .unwrap()
        .ok_or("epsilon undefined")?;
    ensure(eps.value == 1.0, || format!("epsilon = {}", eps.value))?;
    Ok("minrk 2, rank(M') 2, col 2, lin 16, opt 16, eps 1".into())
}

fn criterion_2() -> Check {
    let l = lim();
    let a = PartialMatrix::from_strs(&["11*1", "101*", "1*00"]).unwrap();
    expect_eq("row_min_rank", a.row_min_rank(&l).unwrap(), 3)?;
    expect_eq("col_min_rank", a.col_min_rank(&l).unwrap(), 2)?;
    expect_eq("min_rank", a.min_rank(), 3)?;
    Ok("row 3, col 2, minrk 3".into())
}

/// Every row of length `n` with at most two stars.
fn rows_of(n: usize) -> Vec<PartialRow> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let entries: Vec<Entry> = (0..n)
            .map(|j| [Entry::Zero, Entry::One, Entry::Star][code / 3usize.pow(j as u32) % 3])
            .collect();
        if entries.iter().filter(|&&e| e == Entry::Star).count() <= 2 {
            out.push(PartialRow::from_entries(&entries));
        }
    }
    out
}

fn criterion_3() -> Check {
    let mut count = 0;
    for n in 1..=3 {
        let rows = rows_of(n);
        let mut check = |a: PartialMatrix| -> Result<(), String> {
            count += 1;
            let brute = brute_force_opt_tiny(&a).map_err(|e| e.to_string())?;
            expect_eq(&format!("opt of {}", emit_pmx(&a).trim()), brute, opt(&a))
        };
        for r in &rows {
            check(PartialMatrix::new(n, vec![r.clone()]).unwrap())?;
        }
        for r in &rows {
            for s in &rows {
                check(PartialMatrix::new(n, vec![r.clone(), s.clone()]).unwrap())?;
            }
        }
    }
    Ok(format!("{count} matrices"))
}

fn criterion_4() -> Check {
    let l = lim();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut enumerated = 0;
    for t in 0..500 {
        let a = random_shape(&mut rng, 5, 5);
        let minrk = a.min_rank();
        expect_eq(
            &format!("trial {t}: separating min-rank"),
            separating_min_rank(&a, &l).unwrap(),
            minrk,
        )?;
        if a.star_count() <= 12 {
            enumerated += 1;
            let by_completions = a.completions(&l).unwrap().map(|c| c.rank()).min().unwrap();
            expect_eq(
                &format!("trial {t}: min over completions"),
                by_completions,
                minrk,
            )?;
        }
    }
    Ok(format!(
        "500 matrices, {enumerated} checked against completions"
    ))
}

/// Largest star-free submatrix on the rows in `mask`: those rows and the
/// columns where none of them has a star.
fn star_free_rank(a: &PartialMatrix, mask: usize) -> usize {
    let rows: Vec<usize> = (0..a.m()).filter(|i| (mask >> i) & 1 == 1).collect();
    let cols: Vec<usize> = (0..a.n())
        .filter(|&j| rows.iter().all(|&i| a.entry(i, j) != Entry::Star))
        .collect();
    if cols.is_empty() {
        return 0;
    }
    let b = a.select_rows(&rows).select_columns(&cols).unwrap();
    b.canonical_completion().rank()
}

fn criterion_5() -> Check {
    let l = lim();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut monotone, mut isolated, mut one_star) = (0, 0, 0);
    for t in 0..1000 {
        let a = random_shape(&mut rng, 4, 10);
        let (m, n) = (a.m(), a.n());
        let o = opt(&a);
        let tag = |what: &str| {
            format!(
                "trial {t} ({}): {what}",
                emit_pmx(&a).trim().replace('\n', "/")
            )
        };

        if n >= 2 {
            let p = rng.gen_range(1..n);
            let (b, c) = a.split_columns(p).unwrap();
            let (ob, oc) = (opt(&b), opt(&c));
            ensure(ob * oc <= o && o <= ob << (n - p), || {
                tag(&format!("split at {p}: {ob} * {oc} vs {o}"))
            })?;
        }
        for mask in 1..1usize << m {
            let r = star_free_rank(&a, mask);
            ensure(o <= 1 << (n - r), || {
                tag(&format!("star-free rows {mask:b} rank {r}"))
            })?;
        }
        let exp = n + a.line_cover_number() - a.max_rank(&l).unwrap();
        ensure(o <= 1 << exp, || tag("max-rank/cover bound"))?;
        let col = a.col_min_rank(&l).unwrap();
        ensure(o <= 1 << (n - col), || tag("column min-rank bound"))?;

        for mask in 1..1usize << m {
            let rows: Vec<usize> = (0..m).filter(|i| (mask >> i) & 1 == 1).collect();
            let sub = a.select_rows(&rows);
            let r = rows.len();
            if sub.is_star_monotone() && sub.min_rank() == r {
                monotone += 1;
                ensure(o <= 1 << (n - r), || {
                    tag(&format!("star-monotone rows {rows:?}"))
                })?;
            }
        }
        if let Some(w) = a.isolation(true) {
            isolated += 1;
            ensure(w.verify(&a), || tag("isolation witness"))?;
            ensure(o <= 1 << (n - m), || tag("strongly isolated bound"))?;
        }
        if a.max_row_stars() <= 1 {
            one_star += 1;
            let eps = conjecture_epsilon(&a, &l).unwrap();
            ensure(eps.is_none_or(|e| e.is_at_least_one()), || {
                tag(&format!("epsilon {eps:?}"))
            })?;
        }
    }
    Ok(format!(
        "1000 matrices; {monotone} star-monotone row sets, {isolated} strongly isolated, {one_star} with <= 1 star per row"
    ))
}

fn criterion_6() -> Check {
    let l = lim();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for t in 0..200 {
        let a = random_shape(&mut rng, 5, 5);
        expect_eq(
            &format!("trial {t}: max avoiding dimension"),
            max_avoiding_subspace_dim(&a, &l).unwrap(),
            a.n() - a.min_rank(),
        )?;
    }
    Ok("200 matrices".into())
}

fn spec(n: usize, r: usize) -> CodeMatrixSpec {
    CodeMatrixSpec::new(n, r).unwrap()
}

fn criterion_7() -> Check {
    let l = lim();
    for (n, r) in [(5, 1), (6, 2), (7, 2), (4, 3)] {
        ensure(verify_ka_is_ball(spec(n, r), &l).unwrap(), || {
            format!("K_A is not the ball at ({n}, {r})")
        })?;
    }
    let a = code_matrix(spec(7, 2), &l).unwrap();
    expect_eq("min_rank(7, 2)", a.min_rank(), 3)?;
    expect_eq("lin(7, 2)", lin_exact(&a, &l).unwrap(), 16)?;
    let (o, w) = opt_exact(&a, &l).unwrap();
    expect_eq("opt(7, 2)", o, 16)?;
    let d = min_distance(&w).ok_or("witness has fewer than two members")?;
    ensure(d >= 3, || format!("witness distance {d}"))?;
    expect_eq("hamming_bound(7, 3)", hamming_bound(7, 3).unwrap(), 16)?;
    expect_eq("gv_bound(7, 2)", gv_bound(7, 2).unwrap(), 4)?;
    for (n, r) in [(5, 1), (6, 2)] {
        let a = code_matrix(spec(n, r), &l).unwrap();
        let col = a.col_min_rank(&l).unwrap();
        let row = a.row_min_rank(&l).unwrap();
        ensure(col <= r + 1, || format!("col_min_rank({n}, {r}) = {col}"))?;
        ensure(row <= 2 * r, || format!("row_min_rank({n}, {r}) = {row}"))?;
    }
    Ok(format!(
        "(7, 2): minrk 3, lin = opt = 16, witness distance {d}"
    ))
}

fn equivalent(f: &Depth2Circuit, g: impl Fn(&BitVec) -> BitVec) -> bool {
    all_vectors(f.n()).all(|x| f.evaluate(&x) == g(&x))
}

fn circuit_fixtures() -> Vec<(FixtureKind, Depth2Circuit)> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let kinds = [
        FixtureKind::Linear,
        FixtureKind::Scrambled,
        FixtureKind::Perturbed,
    ];
    (0..200)
        .map(|t| {
            let n = rng.gen_range(1..=8);
            let m = rng.gen_range(1..=n);
            let w = rng.gen_range(0..=3);
            let f = random_linear_circuit(&mut rng, n, m, w, kinds[t % 3]);
            (f.kind, f.circuit)
        })
        .collect()
}

fn criterion_8() -> Check {
    let l = lim();
    let mut middle_checked = 0;
    for (t, (kind, f)) in circuit_fixtures().iter().enumerate() {
        let tag = |what: &str| format!("fixture {t} ({kind:?}): {what}");
        let a = matrix_of(f, &l).map_err(|e| tag(&e.to_string()))?;
        let lin = linearize(f, &l).map_err(|e| tag(&e.to_string()))?;
        ensure(equivalent(f, |x| lin.evaluate(x)), || {
            tag("linearize changed the map")
        })?;
        let rebuilt = lin.to_circuit().map_err(|e| tag(&e.to_string()))?;
        ensure(equivalent(f, |x| rebuilt.evaluate(x)), || {
            tag("rebuilt circuit changed the map")
        })?;
        ensure(lin.width() == a.min_rank(), || {
            tag("width is not min_rank(A_F)")
        })?;
        ensure(lin.degree() <= f.degree(), || tag("degree grew"))?;
        if f.outputs().iter().all(|g| g.table.as_parity().is_some()) {
            middle_checked += 1;
            let g = linearize_middle(f, &l).map_err(|e| tag(&e.to_string()))?;
            ensure(equivalent(f, |x| g.evaluate(x)), || {
                tag("linearize_middle changed the map")
            })?;
        }
        let met = metrics(f);
        ensure(
            a.max_rank(&l).unwrap() <= f.width() + met.match_size,
            || tag("max_rank - match > width"),
        )?;
        let o = opt(&a);
        ensure(1u64 << f.n().saturating_sub(f.width()) <= o, || {
            tag("width < n - log2 opt")
        })?;
    }
    Ok(format!(
        "200 circuits, {middle_checked} with parity outputs"
    ))
}

fn criterion_9() -> Check {
    let l = lim();
    let i4 = Gf2Matrix::identity(4);
    for r in 0..=4 {
        expect_eq(
            &format!("rigidity(I4, {r})"),
            rigidity(&i4, r, &l).unwrap(),
            4 - r,
        )?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let rows = (0..m)
            .map(|_| BitVec::from_u64(n, rng.gen_range(0..1u64 << n)))
            .collect();
        let mat = Gf2Matrix::new(n, rows).unwrap();
        expect_eq(
            "rigidity at own rank",
            rigidity(&mat, mat.rank(), &l).unwrap(),
            0,
        )?;
    }
    // A width-w circuit of degree d gives M = D + CH with at most d ones per
    // row of D, so flipping D away leaves rank <= w.
    let mut checked = 0;
    for (t, (kind, f)) in circuit_fixtures().iter().enumerate() {
        let lin = linearize(f, &l).unwrap();
        let mat = lin.matrix();
        if mat.nrows() * mat.ncols() > l.rigidity_cells {
            continue;
        }
        let mut pairs = vec![(lin.width(), lin.degree())];
        if *kind == FixtureKind::Linear {
            pairs.push((f.width(), f.degree()));
        }
        for (w, d) in pairs {
            let rig = rigidity_within(&mat, w, d * mat.nrows(), &l).unwrap();
            ensure(rig.is_some_and(|r| r <= d * f.n()), || {
                format!("fixture {t}: rigidity at width {w} exceeds degree {d} bound")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} degree bounds checked"))
}

/// A random subspace of dimension at most `max_dim` and minimum weight at
/// least `d`, or the zero space.
fn random_code(rng: &mut ChaCha8Rng, n: usize, max_dim: usize, d: usize) -> Subspace {
    let l = lim();
    for _ in 0..20 {
        let k = rng.gen_range(0..=max_dim);
        let p = Subspace::span(
            n,
            (0..k).map(|_| BitVec::from_u64(n, rng.gen_range(0..1u64 << n))),
        );
        if p.min_weight_nonzero(&l).unwrap().is_none_or(|w| w >= d) {
            return p;
        }
    }
    Subspace::zero(n)
}

fn criterion_10() -> Check {
    let l = lim();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut applicable, mut grown) = (0, 0);
    for t in 0..10_000 {
        let n = rng.gen_range(1..=10);
        let s = rng.gen_range(0..=2.min(n));
        // W is the dual of a code of distance s + 1, so codistance(W) > s.
        let w = random_code(&mut rng, n, n / 2, s + 1).orthogonal_complement();
        let members: Vec<BitVec> = w.elements().collect();

        // Rows with at most s stars whose forbidden vectors miss W: the
        // fixed part is orthogonal to every member of W vanishing on S.
        let m = rng.gen_range(1..=n);
        let rows = (0..m)
            .map(|_| {
                let mut cols: Vec<usize> = (0..n).collect();
                cols.shuffle(&mut rng);
                let stars = BitVec::from_indices(n, cols[..rng.gen_range(0..=s)].iter().copied());
                let inside =
                    Subspace::span(n, members.iter().filter(|x| x.is_disjoint(&stars)).cloned());
                let dual = inside.orthogonal_complement();
                let ones = dual
                    .combination(rng.gen_range(0..1u64 << dual.dim()))
                    .and_not(&stars);
                PartialRow::new(ones, stars).unwrap()
            })
            .collect();
        let a = PartialMatrix::new(n, rows).unwrap();

        // Grow L from W by random points that keep it a solution.
        let k = ForbiddenSet::predicate(&a);
        let mut points = members.clone();
        for _ in 0..n {
            let y = BitVec::from_u64(n, rng.gen_range(0..1u64 << n));
            if points.iter().all(|x| *x == y || !k.contains(&x.xor(&y))) {
                points.push(y);
            }
        }
        let sol = SolutionSet::new(n, points).unwrap();
        ensure(is_solution(&a, &sol), || {
            format!("trial {t}: constructed L is not a solution")
        })?;
        if sol.len() > members.len() {
            grown += 1;
        }
        let v = struct2_check(&a, &sol, &w, &l).map_err(|e| format!("trial {t}: {e}"))?;
        ensure(v.applicable, || {
            format!("trial {t}: codistance {:?} with s = {}", v.codistance, v.s)
        })?;
        applicable += 1;
        ensure(v.conclusion_holds, || {
            format!("trial {t}: L does not lie in a linear solution")
        })?;
    }
    Ok(format!(
        "{applicable} applicable trials, {grown} with L larger than W"
    ))
}

fn minrank_bin(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_minrank"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!(
            "minrank {args:?} exited with {}: {}",
            out.status,
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok(out.stdout)
}

fn criterion_11() -> Check {
    let search = ["search", "--shape", "3x6", "--count", "1000", "--seed", "7"];
    let first = minrank_bin(&search)?;
    let second = minrank_bin(&search)?;
    ensure(!first.is_empty() && first == second, || {
        "search logs differ between runs".into()
    })?;
    let mut wide = search.to_vec();
    wide.extend(["--threads", "8"]);
    ensure(minrank_bin(&wide)? == first, || {
        "search log depends on --threads".into()
    })?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut reports = 0;
    for rows in [
        &["10*0*1", "*111**", "0**1**"][..],
        &["11*1", "101*", "1*00"],
        &["1**0", "01*1", "*01*", "1*1*"],
    ] {
        let path = dir.path().join(format!("m{reports}.pmx"));
        std::fs::write(&path, emit_pmx(&PartialMatrix::from_strs(rows).unwrap()))
            .map_err(|e| e.to_string())?;
        let p = path.to_str().unwrap();
        let one = minrank_bin(&["report", p, "--threads", "1"])?;
        let eight = minrank_bin(&["report", p, "--threads", "8"])?;
        ensure(one == eight, || {
            format!("report on {rows:?} depends on --threads")
        })?;
        reports += 1;
    }
    let lines = first.iter().filter(|&&b| b == b'\n').count();
    Ok(format!(
        "search log of {lines} lines reproduced; {reports} reports identical across thread counts"
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("worked example A1", 1, criterion_1),
        ("row and column min-rank example A2", 1, criterion_2),
        ("operator brute force equals opt", 300, criterion_3),
        ("separating and completion min-rank", 120, criterion_4),
        ("opt bounds on random matrices", 600, criterion_5),
        ("largest avoiding subspace", 120, criterion_6),
        ("code matrices", 300, criterion_7),
        ("circuit linearization", 600, criterion_8),
        ("rigidity", 60, criterion_9),
        (
            "solutions containing high-codistance subspaces",
            600,
            criterion_10,
        ),
        ("determinism of the command line tool", 600, criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let result = result.and_then(|detail| {
            if took > Duration::from_secs(*budget) {
                Err(format!("{detail}; over the {budget} s budget"))
            } else {
                Ok(detail)
            }
        });
        let (tag, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} {:>2} {name} ({:.2} s): {detail}",
            k + 1,
            took.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
