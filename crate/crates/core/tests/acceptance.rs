//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rextosc::models::tables::{table1, table_alphas, TABLE_MS};
use rextosc::models::{
    assemble_tensor, degeneracy, level_energies, printed_cylindrical_report, AxisModel, StateSelection,
};
use rextosc::numeric::report::verify_axis;
use rextosc::numeric::verify::{
    exact_residual, exceptional_hermite_gram, gram_deviation, gram_matrix, intertwine_check, node_count, node_grid,
    residual, sample_points,
};
use rextosc::numeric::{Grid, OracleConfig, Scheme};
use rextosc::orthopoly::{laguerre, laguerre_or_zero};
use rextosc::ratpoly::{int, rat, ExpPolyFunction, GaussSign, Polynomial, Rational, RationalFunction};
use rextosc::susy::q_vanishing_check;

const TABLE_TIME: Duration = Duration::from_secs(1);
const SPECTRUM_TIME: Duration = Duration::from_secs(10);
const RESIDUAL_TIME: Duration = Duration::from_secs(5);
const ORACLE_TOL: f64 = 1e-6;
const RESIDUAL_TOL: f64 = 1e-9;
const GRAM_TOL: f64 = 1e-8;
const INTERTWINE_TOL: f64 = 1e-8;
const Q_TOL: f64 = 1e-12;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn p(c: &[i64]) -> Polynomial {
    Polynomial::from_i64s(c)
}

/// `f(t)` rewritten in `z` with `t = omega x^2 = 2 z^2`.
fn t_to_z(f: &RationalFunction) -> RationalFunction {
    f.compose_scale(&int(2)).compose_square()
}

fn ratio(num: Polynomial, den: Polynomial) -> RationalFunction {
    RationalFunction::reduce(num, den).unwrap()
}

/// `c N(t) / D(t)^k`.
fn term(c: i64, n: &[i64], d: &[i64], k: u32) -> RationalFunction {
    ratio(p(n).scale(&int(c)), p(d).pow(k))
}

/// `V / omega` of a printed row as a function of `t`: `t/4 + terms + [2/t] - 1`.
fn printed_row(terms: Vec<RationalFunction>, barrier: bool) -> RationalFunction {
    let mut v = ratio(p(&[-4, 1]), p(&[4]));
    for t in terms {
        v = &v + &t;
    }
    if barrier {
        v = &v + &ratio(p(&[2]), p(&[0, 1]));
    }
    v
}

fn printed_table1() -> Vec<(usize, Rational, RationalFunction)> {
    let (d1m, d1p) = ([1, 1], [3, 1]);
    let (d2m, d2p) = ([3, 6, 1], [15, 10, 1]);
    let (d3m, d3p) = ([15, 45, 15, 1], [105, 105, 21, 1]);
    let minus = rat(-1, 2);
    let plus = rat(1, 2);
    vec![
        (0, minus.clone(), printed_row(vec![], false)),
        (0, plus.clone(), printed_row(vec![], true)),
        (
            1,
            minus.clone(),
            printed_row(vec![term(4, &[1], &d1m, 1), term(-8, &[1], &d1m, 2)], false),
        ),
        (
            1,
            plus.clone(),
            printed_row(vec![term(4, &[1], &d1p, 1), term(-24, &[1], &d1p, 2)], true),
        ),
        (
            2,
            minus.clone(),
            printed_row(vec![term(192, &[0, 1], &d2m, 2), term(8, &[-3, 1], &d2m, 1)], false),
        ),
        (
            2,
            plus.clone(),
            printed_row(vec![term(320, &[0, 1], &d2p, 2), term(8, &[-5, 1], &d2p, 1)], true),
        ),
        (
            3,
            minus,
            printed_row(
                vec![term(12, &[45, 0, 1], &d3m, 1), term(-2160, &[5, 10, 3], &d3m, 2)],
                false,
            ),
        ),
        (
            3,
            plus,
            printed_row(
                vec![term(12, &[49, 0, 1], &d3p, 1), term(-1008, &[105, 70, 11], &d3p, 2)],
                true,
            ),
        ),
    ]
}

fn criterion_1() -> Verdict {
    let rows = table1().unwrap();
    let printed = printed_table1();
    let mut bad = Vec::new();
    for (m, alpha, v) in &printed {
        let row = rows
            .iter()
            .find(|r| r.m == *m && r.alpha == rextosc::ratpoly::format_rational(alpha))
            .unwrap();
        if row.reduced != t_to_z(v) {
            bad.push(format!("m={m} alpha={alpha}"));
        }
    }
    verdict(
        bad.is_empty(),
        format!("{}/8 rows identical{}", 8 - bad.len(), listing(&bad)),
    )
}

fn listing(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("; mismatched: {}", bad.join(", "))
    }
}

enum Printed2 {
    /// `L_n^{(alpha+1)}`.
    Plain,
    /// `L_{n-1}^{(alpha+1)} + N(t)/D(t) L_n^{(alpha)}`.
    Bracket(Polynomial, Polynomial),
}

fn printed_table2() -> Vec<(usize, Rational, Printed2)> {
    use Printed2::*;
    let minus = rat(-1, 2);
    let plus = rat(1, 2);
    vec![
        (0, minus.clone(), Plain),
        (0, plus.clone(), Plain),
        (1, minus.clone(), Bracket(p(&[3, 1]), p(&[1, 1]))),
        (1, plus.clone(), Bracket(p(&[5, 1]), p(&[3, 1]))),
        // 2t(t/2 + 5) + 15 over 2t(t/2 + 3) + 3, and likewise with 7 and 5
        (2, minus.clone(), Bracket(p(&[15, 10, 1]), p(&[3, 6, 1]))),
        (2, plus.clone(), Bracket(p(&[35, 14, 1]), p(&[15, 10, 1]))),
        (3, minus, Bracket(p(&[105, 105, 42, 4]), p(&[15, 45, 30, 4]))),
        // t(2t^2 + 27t + 189) + 315
        (3, plus, Bracket(p(&[315, 189, 27, 2]), p(&[105, 105, 42, 4]))),
    ]
}

/// The printed eigenfunction of level `n` without its `x` power and Gaussian,
/// as a rational function of `z`.
fn printed_part(entry: &Printed2, alpha: &Rational, n: usize) -> RationalFunction {
    let a1 = alpha + Rational::one();
    match entry {
        Printed2::Plain => RationalFunction::from_poly(laguerre(n, &a1).compose_square()),
        Printed2::Bracket(num, den) => {
            let r = t_to_z(&ratio(num.clone(), den.clone()));
            let lower = RationalFunction::from_poly(laguerre_or_zero(n as i64 - 1, &a1).compose_square());
            let upper = RationalFunction::from_poly(laguerre(n, alpha).compose_square());
            &lower + &(&r * &upper)
        }
    }
}

fn constant_ratio(a: &RationalFunction, b: &RationalFunction) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    let q = a * &b.recip().unwrap();
    q.is_polynomial() && q.num().degree() == Some(0)
}

fn criterion_2() -> Verdict {
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for (m, alpha, entry) in printed_table2() {
        let axis = AxisModel::half(m, alpha.clone(), 1.0).unwrap();
        let mut ok = true;
        for n in 0..=5 {
            let mine = axis.state_shape(n).unwrap();
            let mine_part = RationalFunction::reduce(mine.num().clone(), mine.den().clone()).unwrap();
            if *mine.power() != &alpha + rat(3, 2) || !constant_ratio(&mine_part, &printed_part(&entry, &alpha, n)) {
                ok = false;
            }
        }
        if !ok {
            bad.push(format!("m={m} alpha={alpha}"));
            // does the printed form solve the equation at all?
            let part = printed_part(&entry, &alpha, 1);
            let f = ExpPolyFunction::new(
                &alpha + rat(3, 2),
                part.num().clone(),
                part.den().clone(),
                GaussSign::Decaying,
                axis.scale(),
            )
            .unwrap();
            let r = exact_residual(&axis.hamiltonian().unwrap(), &f, &axis.energy(1)).unwrap();
            notes.push(format!(
                "printed m={m} alpha={alpha} n=1 {} the Schrodinger equation",
                if r.is_zero() { "solves" } else { "does not solve" }
            ));
        }
    }
    let mut detail = format!("{}/8 rows equal up to a constant{}", 8 - bad.len(), listing(&bad));
    if !notes.is_empty() {
        detail.push_str(&format!(" ({})", notes.join("; ")));
    }
    verdict(bad.is_empty(), detail)
}

fn spectrum(axis: &AxisModel, k: usize, l: f64, expect: &[f64]) -> (bool, String) {
    let cfg = OracleConfig {
        n_points: 4000,
        l: Some(l),
        scheme: Scheme::Numerov,
        tolerance: ORACLE_TOL,
    };
    let r = verify_axis(axis, k, &cfg).unwrap();
    let exact_ok = r.analytic == expect;
    let worst = r.abs_error.iter().cloned().fold(0.0, f64::max);
    (
        r.pass && exact_ok,
        format!("{} -> {:?}, max err {worst:.1e}", axis.label(), r.analytic),
    )
}

fn criterion_3() -> Verdict {
    let (ok, d) = spectrum(
        &AxisModel::full(2, 1.0).unwrap(),
        6,
        14.0,
        &[0.0, 3.0, 4.0, 5.0, 6.0, 7.0],
    );
    verdict(ok, d)
}

fn criterion_4() -> Verdict {
    let (a, da) = spectrum(
        &AxisModel::half(1, rat(-1, 2), 1.0).unwrap(),
        4,
        14.0,
        &[3.0, 5.0, 7.0, 9.0],
    );
    let (b, db) = spectrum(
        &AxisModel::half(1, rat(1, 2), 1.0).unwrap(),
        4,
        14.0,
        &[5.0, 7.0, 9.0, 11.0],
    );
    verdict(a && b, format!("{da}; {db}"))
}

/// Every 1D catalog axis with `m <= 3`.
fn catalog_axes() -> Vec<AxisModel> {
    let mut axes = vec![AxisModel::full(0, 1.0).unwrap(), AxisModel::full(2, 1.0).unwrap()];
    for m in TABLE_MS {
        for a in table_alphas() {
            axes.push(AxisModel::half(m, a, 1.0).unwrap());
        }
    }
    axes
}

fn criterion_5() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for axis in catalog_axes() {
        let v = axis.hamiltonian().unwrap();
        let pts = sample_points(&axis, 50);
        for n in 0..=5 {
            let s = axis.state(n).unwrap();
            let e = axis.energy(n).to_f64().unwrap() * axis.omega();
            worst = worst.max(residual(&v, s.wavefunction(), e, &pts).unwrap());
            count += 1;
        }
    }
    verdict(
        worst <= RESIDUAL_TOL,
        format!("{count} states, max relative residual {worst:.1e}"),
    )
}

fn criterion_6() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for axis in [
        AxisModel::full(2, 1.0).unwrap(),
        AxisModel::half(1, rat(-1, 2), 1.0).unwrap(),
        AxisModel::half(1, rat(1, 2), 1.0).unwrap(),
    ] {
        let states: Vec<_> = (0..6).map(|k| axis.state(k).unwrap().factors.remove(0)).collect();
        let d = gram_deviation(&gram_matrix(&states, axis.domain()));
        ok &= d <= GRAM_TOL;
        parts.push(format!("{} {d:.1e}", axis.label()));
    }
    for m in [2, 4] {
        let d = gram_deviation(&exceptional_hermite_gram(m, 6));
        ok &= d <= GRAM_TOL;
        parts.push(format!("weighted Xh m={m} {d:.1e}"));
    }
    verdict(ok, parts.join(", "))
}

fn criterion_7() -> Verdict {
    let mut worst: f64 = 0.0;
    for axis in [
        AxisModel::full(2, 1.0).unwrap(),
        AxisModel::half(1, rat(-1, 2), 1.0).unwrap(),
        AxisModel::half(1, rat(1, 2), 1.0).unwrap(),
    ] {
        for n in 0..=3 {
            worst = worst.max(intertwine_check(&axis, n).unwrap());
        }
    }
    verdict(worst <= INTERTWINE_TOL, format!("max L2 distance {worst:.1e}"))
}

fn criterion_8() -> Verdict {
    let mut axes = catalog_axes();
    for m in 0..=3 {
        axes.push(AxisModel::radial(m, 1, 1.0).unwrap());
        axes.push(AxisModel::radial(m, -2, 1.0).unwrap());
    }
    let mut bad = Vec::new();
    for a in &axes {
        let pair = a.partner_pair().unwrap();
        if pair.v_minus.reduced() != a.potential().unwrap().reduced()
            || pair.v_plus.reduced() != a.plus_potential().reduced()
        {
            bad.push(a.label());
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "{}/{} families identical{}",
            axes.len() - bad.len(),
            axes.len(),
            listing(&bad)
        ),
    )
}

fn criterion_9() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let full = |m| AxisModel::full(m, 1.0).unwrap().seed().unwrap();
    let points = |rng: &mut ChaCha8Rng, d: usize| -> Vec<Vec<f64>> {
        (0..100)
            .map(|_| (0..d).map(|_| rng.gen_range(-3.0..3.0)).collect())
            .collect()
    };
    let two = q_vanishing_check(&[full(2), full(2)], &points(&mut rng, 2)).unwrap();
    let three = q_vanishing_check(&[full(2), full(0), full(2)], &points(&mut rng, 3)).unwrap();
    let worst = two.max_relative.max(three.max_relative);
    verdict(
        worst <= Q_TOL && three.components.len() == 3,
        format!(
            "2D m=(2,2) {:.1e}, 3D m=(2,0,2) components {:?}",
            two.max_relative, three.components
        ),
    )
}

fn criterion_10() -> Verdict {
    let ff = assemble_tensor(vec![AxisModel::full(2, 1.0).unwrap(), AxisModel::full(2, 1.0).unwrap()]).unwrap();
    let listed = degeneracy(&ff, &int(8), 20, StateSelection::Listed).unwrap();
    let complete = degeneracy(&ff, &int(8), 20, StateSelection::Complete).unwrap();
    let e8 = listed.count == 3 && listed.complete;

    let ff0 = assemble_tensor(vec![AxisModel::full(0, 1.0).unwrap(), AxisModel::full(0, 1.0).unwrap()]).unwrap();
    let mixed = assemble_tensor(vec![
        AxisModel::full(0, 1.0).unwrap(),
        AxisModel::half(0, rat(-1, 2), 1.0).unwrap(),
    ])
    .unwrap();
    let counts = |m| -> Vec<(Rational, usize)> {
        let levels = level_energies(m, 20, StateSelection::Complete).unwrap();
        let ground = levels[0].energy.clone();
        levels.into_iter().map(|l| (l.energy - &ground, l.count)).collect()
    };
    let a = counts(&ff0);
    let b = counts(&mixed);
    let mut same = 0;
    let mut differ = 0;
    let mut formulas = true;
    for (e, ca) in &a {
        let n = e.to_integer().to_usize().unwrap();
        formulas &= e.is_integer() && *ca == n + 1;
        if let Some((_, cb)) = b.iter().find(|(eb, _)| eb == e) {
            formulas &= *cb == n / 2 + 1;
            if ca == cb {
                same += 1;
            } else {
                differ += 1;
            }
        }
    }
    verdict(
        e8 && formulas && differ > 0,
        format!(
            "E=8: {} listed witnesses {:?} ({} incl. extra-state products); n<=20 matched totals: {differ} differ, {same} agree",
            listed.count, listed.witnesses, complete.count
        ),
    )
}

fn criterion_11() -> Verdict {
    let radial = AxisModel::radial(1, 1, 1.0).unwrap();
    let (r_ok, rd) = spectrum(&radial, 4, 14.0, &[6.0, 8.0, 10.0, 12.0]);
    let (z_ok, zd) = spectrum(
        &AxisModel::full(2, 1.0).unwrap(),
        6,
        14.0,
        &[0.0, 3.0, 4.0, 5.0, 6.0, 7.0],
    );
    let pts: Vec<(f64, f64)> = (1..=8).map(|i| (0.4 * i as f64, 0.3 * i as f64 - 1.2)).collect();
    let one = printed_cylindrical_report(1, 1, 2, 1.0, 1.0, &pts).unwrap();
    let two = printed_cylindrical_report(1, 2, 2, 1.0, 1.0, &pts).unwrap();
    verdict(
        r_ok && z_ok && !one.samples.is_empty() && !two.samples.is_empty(),
        format!(
            "{rd}; axial {zd}; printed form vs construction: radial max diff {:.1e} (m1=1), {:.1e} (m1=2); \
             axial as printed {:.1e}, with 1/4 {:.1e}",
            one.max_radial_difference,
            two.max_radial_difference,
            one.max_axial_difference_as_printed,
            one.max_axial_difference_quarter
        ),
    )
}

fn criterion_12() -> Verdict {
    let mut bad = Vec::new();
    let mut count = 0;
    for axis in catalog_axes() {
        let grid: Grid = node_grid(&axis).unwrap();
        for n in 0..=5 {
            let nodes = node_count(&axis.state_shape(n).unwrap(), &grid).unwrap();
            count += 1;
            if nodes != n {
                bad.push(format!("{} n={n}: {nodes}", axis.label()));
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!("{}/{count} states{}", count - bad.len(), listing(&bad)),
    )
}

type Criterion = (&'static str, fn() -> Verdict, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("half-line potential table", criterion_1, Some(TABLE_TIME)),
        ("half-line eigenfunction table", criterion_2, Some(TABLE_TIME)),
        ("full-line spectrum m=2", criterion_3, Some(SPECTRUM_TIME)),
        ("half-line spectra m=1", criterion_4, Some(2 * SPECTRUM_TIME)),
        ("Schrodinger residuals", criterion_5, Some(RESIDUAL_TIME)),
        ("orthonormality", criterion_6, None),
        ("intertwining", criterion_7, None),
        ("partner potentials equal catalog", criterion_8, None),
        ("Q vanishes for separable seeds", criterion_9, None),
        ("degeneracy enumeration", criterion_10, None),
        ("cylindrical spectrum and printed form", criterion_11, None),
        ("node counts", criterion_12, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|l| took <= l);
        let pass = v.pass && in_time;
        if !pass {
            failed += 1;
        }
        let time_note = if in_time {
            String::new()
        } else {
            format!(" (over the {:?} limit)", limit.unwrap())
        };
        println!(
            "criterion {:>2} {} {name}: {} [{:.2}s]{time_note}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            v.detail,
            took.as_secs_f64()
        );
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
