//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{dihedral_reflections, width_triples, TwoStep};
use coxlift::boolfn::BoolFunc;
use coxlift::coxeter::{
    paper_presentation, todd_coxeter, verify_pipeline, CoxeterMatrix, Enumeration, Presentation,
    Relator, Verdict, VerificationReport,
};
use coxlift::lifting::{LiftedPipeline, PipelineSpec};
use coxlift::perm::Perm;
use coxlift::permgroup::{closure, is_nondegenerate, DEFAULT_ELEMENT_CAP};
use coxlift::quantum::{
    basis_state, measure, representation_check, uniform_superposition, PermUnitary, QState,
};
use coxlift::rng::SplitMix64;

const TOL: f64 = 1e-12;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure!(took < limit, "{what} took {took:?}, limit {limit:?}");
    Ok(took)
}

fn lift(t: &TwoStep) -> (Perm, Perm) {
    let l = LiftedPipeline::new(&t.spec()).unwrap();
    (l.generators()[0].clone(), l.generators()[1].clone())
}

fn random_widths(rng: &mut SplitMix64) -> [u32; 3] {
    [0; 3].map(|_| 1 + rng.below(3) as u32)
}

fn all_funcs(a: u32, b: u32) -> Vec<BoolFunc> {
    let n = 1usize << a;
    let values = 1u64 << b;
    (0..values.pow(n as u32))
        .map(|mut code| {
            let table = (0..n)
                .map(|_| {
                    let v = (code % values) as u32;
                    code /= values;
                    v
                })
                .collect();
            BoolFunc::new(a, b, table).unwrap()
        })
        .collect()
}

fn lemma_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = SplitMix64::new(0x1e44a);
    for trial in 0..100 {
        let widths = random_widths(&mut rng);
        let t = TwoStep::random(widths, rng.next_u64());
        let (phi, gamma) = lift(&t);
        let e = Perm::identity(t.width()).unwrap();
        let c = |a: &Perm, b: &Perm| a.compose(b).unwrap();

        ensure!(phi == t.closed_form(|t, x, y, z| (x, y ^ t.f(x), z)), "trial {trial}: φ");
        ensure!(gamma == t.closed_form(|t, x, y, z| (x, y, z ^ t.g(y))), "trial {trial}: γ");
        ensure!(c(&phi, &phi) == e && c(&gamma, &gamma) == e, "trial {trial}: involutions");

        let gp = c(&gamma, &phi);
        let pg = c(&phi, &gamma);
        ensure!(gp.inverse() == pg, "trial {trial}: (γφ)⁻¹ ≠ φγ");

        let gp2 = c(&gp, &gp);
        let gp3 = c(&gp2, &gp);
        let forms = [
            (
                "γφ",
                gp.clone(),
                t.closed_form(|t, x, y, z| (x, y ^ t.f(x), z ^ t.g(y ^ t.f(x)))),
            ),
            (
                "φγφ",
                c(&phi, &gp),
                t.closed_form(|t, x, y, z| (x, y, z ^ t.g(y ^ t.f(x)))),
            ),
            (
                "(γφ)²",
                gp2.clone(),
                t.closed_form(|t, x, y, z| (x, y, z ^ t.g(y ^ t.f(x)) ^ t.g(y))),
            ),
            (
                "φ(γφ)²",
                c(&phi, &gp2),
                t.closed_form(|t, x, y, z| (x, y ^ t.f(x), z ^ t.g(y ^ t.f(x)) ^ t.g(y))),
            ),
            (
                "(γφ)³",
                gp3.clone(),
                t.closed_form(|t, x, y, z| (x, y ^ t.f(x), z ^ t.g(y))),
            ),
        ];
        for (name, got, want) in forms {
            ensure!(got == want, "trial {trial} {widths:?}: {name} closed form");
        }
        ensure!(c(&phi, &gp3) == gamma, "trial {trial}: φ(γφ)³ ≠ γ");
        ensure!(c(&gp3, &gp) == e, "trial {trial}: (γφ)⁴ ≠ e");
    }
    let took = within(Duration::from_secs(5), start, "lemma suite")?;
    Ok(format!("100 pipelines in {took:.2?}"))
}

fn d8_claim() -> Outcome {
    let mut rng = SplitMix64::new(0xd8);
    let mut checked = 0;
    let mut slowest = Duration::ZERO;
    for trial in 0..200 {
        let t = TwoStep::random(random_widths(&mut rng), rng.next_u64());
        let (phi, gamma) = lift(&t);
        if !is_nondegenerate(&[phi.clone(), gamma.clone()]) {
            continue;
        }
        let start = Instant::now();
        let g = closure(&[phi.clone(), gamma.clone()], DEFAULT_ELEMENT_CAP).unwrap();
        let witness = g.dihedral_8_witness();
        slowest = slowest.max(within(Duration::from_secs(1), start, "closure")?);

        ensure!(g.order() == 8, "trial {trial}: order {}", g.order());
        let Some(w) = witness else {
            return Err(format!("trial {trial}: no D8 witness"));
        };
        let a = g.element(w.a).unwrap();
        let b = g.element(w.b).unwrap();
        ensure!(*a == phi.compose(&gamma).unwrap(), "trial {trial}: A ≠ φ∘γ");
        ensure!(*b == gamma, "trial {trial}: B ≠ γ");
        ensure!(w.generator_form, "trial {trial}: witness not in generator form");
        // independent check of the dihedral relations
        ensure!(a.order() == 4 && b.order() == 2, "trial {trial}: witness orders");
        let bab = b.compose(a).unwrap().compose(b).unwrap();
        ensure!(bab == a.inverse(), "trial {trial}: BAB ≠ A⁻¹");
        checked += 1;
    }
    ensure!(checked >= 50, "only {checked} nondegenerate pipelines sampled");
    Ok(format!("{checked} nondegenerate pipelines, slowest {slowest:.2?}"))
}

fn invertible_evaluation() -> Outcome {
    let mut cases = 0;
    for widths in width_triples(1, 3) {
        let t = TwoStep::random(widths, u64::from(widths[0] * 9 + widths[1] * 3 + widths[2]));
        let l = LiftedPipeline::new(&t.spec()).unwrap();
        let forward = l.evaluate(&l.forward_word()).unwrap();
        let mut reversed_word = l.forward_word();
        reversed_word.reverse();
        let reversed = l.evaluate(&reversed_word).unwrap();
        let [n, m, _] = widths;
        for x in 0..1u32 << n {
            let y = t.f(x);
            let z = t.g(y);
            let direct = x | y << n | z << (n + m);
            ensure!(forward.apply(x) == direct, "{widths:?} x={x}: forward word");
            ensure!(reversed.apply(direct) == x, "{widths:?} x={x}: reversed word");
            cases += 1;
        }
        ensure!(reversed.compose(&forward).unwrap().is_identity(), "{widths:?}: not undone");
    }
    // three steps, four registers
    let mut seed = 0;
    for a in 1..=3u32 {
        for b in 1..=3u32 {
            for c in 1..=3u32 {
                for d in 1..=3u32 {
                    seed += 1;
                    let widths = [a, b, c, d];
                    let fs: Vec<BoolFunc> = (0..3)
                        .map(|i| BoolFunc::random(widths[i], widths[i + 1], seed * 7 + i as u64).unwrap())
                        .collect();
                    let spec = PipelineSpec::new(widths.to_vec(), fs.clone()).unwrap();
                    let l = LiftedPipeline::new(&spec).unwrap();
                    let forward = l.evaluate(&[2, 1, 0]).unwrap();
                    let reversed = l.evaluate(&[0, 1, 2]).unwrap();
                    for x in 0..1u32 << a {
                        let y = fs[0].table()[x as usize];
                        let z = fs[1].table()[y as usize];
                        let w = fs[2].table()[z as usize];
                        let direct = x | y << a | z << (a + b) | w << (a + b + c);
                        ensure!(forward.apply(x) == direct, "{widths:?} x={x}: 3-step forward");
                        ensure!(reversed.apply(direct) == x, "{widths:?} x={x}: 3-step reversed");
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{cases} traces"))
}

fn coxeter_matrix() -> Outcome {
    let start = Instant::now();
    let id = BoolFunc::identity(1).unwrap();
    let spec = PipelineSpec::new(vec![1; 4], vec![id.clone(), id.clone(), id]).unwrap();
    let l = LiftedPipeline::new(&spec).unwrap();
    let m = CoxeterMatrix::from_generators(l.generators())
        .map_err(|issues| format!("degenerate: {issues:?}"))?;
    let want = vec![vec![1, 4, 2], vec![4, 1, 4], vec![2, 4, 1]];
    ensure!(m.entries() == want.as_slice(), "got {:?}", m.entries());
    // independent: orders of the pairwise products by iteration
    for i in 0..3 {
        for j in 0..3 {
            let p = l.generators()[i].compose(&l.generators()[j]).unwrap();
            let mut q = p.clone();
            let mut k = 1;
            while !q.is_identity() {
                q = q.compose(&p).unwrap();
                k += 1;
            }
            ensure!(k == want[i][j], "pair ({i},{j}) has order {k}");
        }
    }
    let took = within(Duration::from_secs(1), start, "coxeter matrix")?;
    Ok(format!("{:?} in {took:.2?}", m.entries()))
}

fn never_false_confirmed(r: &VerificationReport) -> Result<(), String> {
    if r.verdict == Verdict::Confirmed {
        ensure!(
            r.abstract_order.and_then(Enumeration::finite) == Some(r.concrete_order),
            "CONFIRMED with unequal orders: {r:?}"
        );
    }
    Ok(())
}

fn presentation_verification() -> Outcome {
    let two = todd_coxeter(&paper_presentation(2).unwrap(), 100_000);
    ensure!(two == Enumeration::Finite(8), "n=2 enumerates to {two:?}");

    let p1 = PipelineSpec::new(
        vec![1, 1, 1],
        vec![BoolFunc::identity(1).unwrap(), BoolFunc::identity(1).unwrap()],
    )
    .unwrap();
    let start = Instant::now();
    let r = verify_pipeline(&p1, 100_000, DEFAULT_ELEMENT_CAP).unwrap();
    within(Duration::from_secs(1), start, "n=2 verify")?;
    ensure!(r.verdict == Verdict::Confirmed, "n=2 verdict {:?}", r.verdict);
    ensure!(r.concrete_order == 8, "n=2 concrete order {}", r.concrete_order);
    never_false_confirmed(&r)?;

    let id = BoolFunc::identity(1).unwrap();
    let mut three = vec![PipelineSpec::new(vec![1; 4], vec![id.clone(), id.clone(), id]).unwrap()];
    let mut rng = SplitMix64::new(3);
    while three.len() < 6 {
        let p = PipelineSpec::random(&[1, 1, 2, 1], rng.next_u64()).unwrap();
        if is_nondegenerate(LiftedPipeline::new(&p).unwrap().generators()) {
            three.push(p);
        }
    }
    let mut orders = Vec::new();
    for p in &three {
        let r = verify_pipeline(p, 100_000, DEFAULT_ELEMENT_CAP).unwrap();
        ensure!(
            matches!(r.verdict, Verdict::ProperQuotient | Verdict::BoundExceeded),
            "n=3 verdict {:?}",
            r.verdict
        );
        ensure!(r.relations_hold, "n=3 relations fail");
        let direct = closure(LiftedPipeline::new(p).unwrap().generators(), DEFAULT_ELEMENT_CAP)
            .unwrap()
            .order();
        ensure!(r.concrete_order == direct, "n=3 concrete order {} vs {direct}", r.concrete_order);
        never_false_confirmed(&r)?;
        orders.push(format!("{:?}/{}", r.verdict, r.concrete_order));
    }
    Ok(format!("n=2 CONFIRMED/8; n=3 {}", orders.join(", ")))
}

fn dihedral_family() -> Outcome {
    let start = Instant::now();
    let mut found = Vec::new();
    for m in 2..=6u32 {
        let pres = Presentation::new(
            2,
            vec![Relator::new(vec![0], 2), Relator::new(vec![1], 2), Relator::new(vec![0, 1], m)],
        )
        .unwrap();
        let abstract_order = todd_coxeter(&pres, 100_000);
        let (s, t) = dihedral_reflections(m);
        let concrete = closure(&[s, t], DEFAULT_ELEMENT_CAP).unwrap().order();
        ensure!(
            abstract_order == Enumeration::Finite(2 * m as usize) && concrete == 2 * m as usize,
            "m={m}: abstract {abstract_order:?}, concrete {concrete}"
        );
        found.push(concrete);
    }
    let took = within(Duration::from_secs(2), start, "dihedral family")?;
    Ok(format!("orders {found:?} in {took:.2?}"))
}

fn quantum_representation() -> Outcome {
    let start = Instant::now();
    let mut pipelines: Vec<TwoStep> = Vec::new();
    // every function pair on B¹, then seeded samples of wider registers
    for f in all_funcs(1, 1) {
        for g in all_funcs(1, 1) {
            pipelines.push(TwoStep { n: 1, m: 1, k: 1, f: f.clone(), g });
        }
    }
    for widths in width_triples(1, 4) {
        if widths.iter().sum::<u32>() > 6 {
            continue;
        }
        for seed in 0..3 {
            pipelines.push(TwoStep::random(widths, seed));
        }
    }
    let mut checked = 0;
    for (i, t) in pipelines.iter().enumerate() {
        let (phi, gamma) = lift(t);
        if !is_nondegenerate(&[phi.clone(), gamma.clone()]) {
            continue;
        }
        let g = closure(&[phi, gamma], DEFAULT_ELEMENT_CAP).unwrap();
        let r = representation_check(&g, 5, i as u64).unwrap();
        ensure!(r.exhaustive && r.pairs_checked == 64, "pipeline {i}: {r:?}");
        ensure!(r.states_per_pair == 5, "pipeline {i}: {} states", r.states_per_pair);
        ensure!(r.passed(), "pipeline {i}: {r:?}");
        // independent norm check
        for (k, p) in g.elements().enumerate() {
            let s = QState::random(t.width(), 8, (i * 8 + k) as u64).unwrap();
            let out = PermUnitary::new(p.clone()).apply(&s).unwrap();
            ensure!((out.norm() - s.norm()).abs() <= TOL, "pipeline {i}: norm drift");
            for (&idx, amp) in s.amplitudes() {
                ensure!((out.amplitude(p.apply(idx)) - amp).norm() <= TOL, "pipeline {i}: amplitude");
            }
        }
        checked += 1;
    }
    let took = within(Duration::from_secs(10), start, "representation checks")?;
    Ok(format!("{checked} pipelines in {took:.2?}"))
}

fn quantum_evaluation() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for widths in width_triples(1, 3) {
        let t = TwoStep::random(widths, u64::from(widths.iter().product::<u32>()) + 11);
        let l = LiftedPipeline::new(&t.spec()).unwrap();
        let u = PermUnitary::new(l.evaluate(&[1, 0]).unwrap());
        for x in 0..1u32 << widths[0] {
            let out = u.apply(&basis_state(l.layout(), &[x, 0, 0]).unwrap()).unwrap();
            let want = x | t.f(x) << widths[0] | t.g(t.f(x)) << (widths[0] + widths[1]);
            ensure!(out.amplitudes().len() == 1, "{widths:?} x={x}: not a basis state");
            ensure!(
                (out.amplitude(want) - 1.0).norm() <= TOL,
                "{widths:?} x={x}: amplitude {}",
                out.amplitude(want)
            );
            let m = measure(&out, l.layout(), 2, u64::from(x), 32).unwrap();
            ensure!(
                m.counts.len() == 1 && m.counts.get(&t.g(t.f(x))) == Some(&32),
                "{widths:?} x={x}: measurement {:?}",
                m.counts
            );
            cases += 1;
        }
    }

    let id = BoolFunc::identity(1).unwrap();
    let spec = PipelineSpec::new(vec![1, 1, 1], vec![id.clone(), id]).unwrap();
    let l = LiftedPipeline::new(&spec).unwrap();
    let base = basis_state(l.layout(), &[0, 0, 0]).unwrap();
    let s = uniform_superposition(l.layout(), 0, &base).unwrap();
    let out = PermUnitary::new(l.forward()).apply(&s).unwrap();
    let shots = 10_000;
    let m = measure(&out, l.layout(), 2, 7, shots).unwrap();
    for v in 0..2 {
        let freq = *m.counts.get(&v).unwrap_or(&0) as f64 / shots as f64;
        ensure!((freq - 0.5).abs() <= 0.03, "outcome {v} frequency {freq}");
    }
    let took = within(Duration::from_secs(5), start, "quantum evaluation")?;
    Ok(format!("{cases} inputs, shots {:?}, {took:.2?}", m.counts))
}

fn degeneracy() -> Outcome {
    let mut cases = 0;
    for widths in width_triples(1, 3) {
        for seed in 0..3 {
            let [n, m, k] = widths;
            let f = BoolFunc::constant(n, m, 0).unwrap();
            let g = BoolFunc::random(m, k, seed).unwrap();
            let spec = PipelineSpec::new(widths.to_vec(), vec![f, g]).unwrap();
            let r = verify_pipeline(&spec, 100_000, DEFAULT_ELEMENT_CAP).unwrap();
            ensure!(r.verdict == Verdict::Degenerate, "{widths:?}: verdict {:?}", r.verdict);
            ensure!(r.concrete_order <= 2, "{widths:?}: order {}", r.concrete_order);
            let group = closure(LiftedPipeline::new(&spec).unwrap().generators(), 100).unwrap();
            ensure!(!group.is_dihedral_8(), "{widths:?}: false D8 claim");
            cases += 1;
        }
    }
    Ok(format!("{cases} pipelines"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("lemma suite", lemma_suite),
        ("D8 claim", d8_claim),
        ("invertible evaluation", invertible_evaluation),
        ("Coxeter matrix", coxeter_matrix),
        ("presentation verification", presentation_verification),
        ("dihedral family", dihedral_family),
        ("quantum representation", quantum_representation),
        ("quantum evaluation", quantum_evaluation),
        ("degeneracy", degeneracy),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS  {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}. {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
