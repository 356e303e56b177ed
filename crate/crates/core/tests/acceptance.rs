//! Acceptance criteria, one line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::SeedableRng;

use spider_core::cli::{run, ClaspExpansion};
use spider_core::config::Config;
use spider_core::link::braid::{braid_closure, random_word, reidemeister2, reidemeister3, two_strand_closures};
use spider_core::link::cable::{g3, vector_colours};
use spider_core::link::ideal::{combine, ideal_member, period_check, sl3_power_residue, IdealKind, Residue};
use spider_core::link::skein::skein_framed;
use spider_core::link::{parse_pd, LinkDiagram};
use spider_core::qpoly::{qint, qr, LaurentPoly, RatFunc};
use spider_core::rep::{inv_dim, Algebra, Weight};
use spider_core::sl3::clasp::single_expansion_webs;
use spider_core::sl3::graphs::{circle, prime_web_6_1, prime_web_6_1_expected, theta};
use spider_core::sl3::reduce::{evaluate_closed_randomized, graph_invariant};
use spider_core::sl3::{clasp_with, evaluate_closed};
use spider_core::sp4::{b2_coeffs_n0, single_loop};
use spider_core::verify::{jw_projectors, sl3_recurrences, sp4_recurrences, theta_sl2_formula};
use spider_core::web::random_closed_web;

enum Verdict {
    Pass(String),
    Fail(String),
    Waived(String),
}

type Outcome = Result<Verdict, String>;

fn pass(detail: impl Into<String>) -> Outcome {
    Ok(Verdict::Pass(detail.into()))
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn r(n: i64) -> RatFunc {
    qr(n)
}

fn div(a: RatFunc, b: RatFunc) -> RatFunc {
    &a / &b
}

fn mul(a: RatFunc, b: RatFunc) -> RatFunc {
    &a * &b
}

fn sorted(v: Vec<RatFunc>) -> Vec<String> {
    let mut s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    s.sort();
    s
}

fn expansion(a: usize, b: usize) -> Result<Vec<RatFunc>, String> {
    let out = run(["spider", "clasp-expand", "--a", &a.to_string(), "--b", &b.to_string()]);
    ensure(out.code == 0, || out.stderr.clone())?;
    let parsed = e(ClaspExpansion::parse(&out.stdout))?;
    parsed.terms.iter().map(|t| e(t.coeff.parse::<RatFunc>())).collect()
}

fn c1_example_expansions() -> Outcome {
    let two = expansion(2, 0)?;
    let want2 = vec![RatFunc::one(), div(RatFunc::one(), r(2))];
    ensure(sorted(two.clone()) == sorted(want2), || format!("(2,0) coefficients {two:?}"))?;
    let three = expansion(3, 0)?;
    let want3 = vec![
        RatFunc::one(),
        div(r(2), r(3)),
        div(r(2), r(3)),
        div(r(1), r(3)),
        div(r(1), r(3)),
        div(RatFunc::one(), mul(r(2), r(3))),
    ];
    ensure(sorted(three.clone()) == sorted(want3), || format!("(3,0) coefficients {three:?}"))?;
    pass("(2,0): 2 terms, (3,0): 6 terms")
}

fn c2_clasp_axioms() -> Outcome {
    let cfg = Config::default();
    let mut checks = 0;
    for n in 1..=5 {
        let rep = e(spider_core::sl3::clasp::verify_clasp_axioms(&e(clasp_with(n, 0, &cfg))?, &format!("({n},0)")))?;
        ensure(rep.passed(), || rep.summary())?;
        checks += rep.checked;
    }
    let mut pairs = 0;
    for s in 2..=5 {
        for a in 1..s {
            let b = s - a;
            let quad = e(clasp_with(a, b, &cfg))?;
            let dbl = e(spider_core::sl3::clasp::double_clasp(a, b, &cfg))?;
            ensure(quad.sum().keyed() == dbl.sum().keyed(), || format!("({a},{b}) expansions differ"))?;
            pairs += 1;
        }
    }
    pass(format!("{checks} axiom checks, {pairs} weights term-by-term"))
}

fn c3_sl3_recurrences() -> Outcome {
    let mut rep = e(sl3_recurrences(6))?;
    for n in 7..=20 {
        rep.absorb(e(spider_core::sl3::clasp::verify_single_recurrences(n))?);
    }
    ensure(rep.passed(), || rep.summary())?;
    pass(format!("{} equations", rep.checked))
}

fn c4_sp4_recurrences() -> Outcome {
    let rep = e(sp4_recurrences(8))?;
    ensure(rep.passed(), || rep.summary())?;
    let t2 = e(b2_coeffs_n0(2))?;
    ensure(t2.get(0, 1).is_one(), || "a01 != 1".into())?;
    ensure(*t2.get(0, 2) == div(RatFunc::one(), mul(r(2), r(2))), || "a02 != 1/[2]^2".into())?;
    let a12 = div(mul(r(4), r(3)), mul(mul(r(2), r(2)), r(6)));
    ensure(*t2.get(1, 2) == a12, || "a12 != [4][3]/([2]^2[6])".into())?;
    let t = e(b2_coeffs_n0(3))?;
    let a = |i, j| t.get(i, j).clone();
    let l = -&single_loop();
    let s = mul(r(2), r(2));
    let first = &(&(&(&(&a(0, 1) + &(&l * &a(0, 2))) - &(&mul(r(2), r(4)) * &a(0, 3))) - &(&l * &a(1, 2)))
        + &(&l * &a(1, 3)))
        + &a(2, 3);
    let rels = [
        first,
        &a(0, 2) - &(&s * &a(0, 3)),
        &a(1, 2) - &(&s * &a(1, 3)),
        &(&a(0, 1) - &(&s * &a(0, 2))) + &(&s * &a(0, 3)),
        &(&(&s * &a(0, 3)) - &(&s * &a(1, 3))) + &a(2, 3),
    ];
    for (k, x) in rels.iter().enumerate() {
        ensure(x.is_zero(), || format!("n=3 relation {k} leaves {x}"))?;
    }
    pass(format!("{} equations, base values at n=2,3", rep.checked))
}

fn c5_graph_invariant() -> Outcome {
    let three = qint(3);
    ensure(e(graph_invariant(&circle()))? == three, || "circle".into())?;
    let th = -(&qint(2) * &three);
    ensure(e(graph_invariant(&theta()))? == th, || "theta".into())?;
    let v = e(graph_invariant(&prime_web_6_1()))?;
    let want = prime_web_6_1_expected();
    ensure(v == want, || format!("6_1 gives {v}"))?;
    pass(format!("6_1 = {v}"))
}

fn vectors(d: &LinkDiagram) -> Vec<Weight> {
    vector_colours(d)
}

fn c6_link_invariant() -> Outcome {
    let cfg = Config::default();
    let g = |d: &LinkDiagram| e(g3(d, &vectors(d), &cfg));
    let unknot = e(parse_pd("O"))?;
    ensure(g(&unknot)? == qint(3), || "unknot".into())?;

    let z = &LaurentPoly::v_pow(1) - &LaurentPoly::v_pow(-1);
    let mut identities = 0;
    for d in two_strand_closures(3) {
        for i in 0..d.crossings().len() {
            let s = d.crossings()[i].sign;
            let (here, switched) = (g(&d)?, g(&d.switch_crossing(i))?);
            let smooth = g(&d.smooth_crossing(i))?;
            let (plus, minus) = if s > 0 { (here, switched) } else { (switched, here) };
            ensure(&plus - &minus == &z * &smooth, || format!("skein fails at crossing {i} of\n{}", d.render()))?;
            identities += 1;
        }
    }

    let trefoil = e(parse_pd("X(1,5,2,4)+ X(3,1,4,6)+ X(5,3,6,2)+"))?;
    let (web, skein) = (g(&trefoil)?, skein_framed(&trefoil));
    ensure(web == skein, || format!("trefoil: web {web}, skein {skein}"))?;

    let mut rng = StdRng::seed_from_u64(2024);
    let mut pairs = 0;
    for k in 0..24 {
        let word = random_word(&mut rng, 3, 3 + k % 3);
        let (l, rw) = if k % 2 == 0 {
            (word.clone(), reidemeister2(&mut rng, 3, &word))
        } else {
            reidemeister3(&mut rng, 3, &word)
        };
        let (dl, dr) = (e(braid_closure(3, &l))?, e(braid_closure(3, &rw))?);
        ensure(g(&dl)? == g(&dr)?, || format!("moves change the value: {l:?} vs {rw:?}"))?;
        pairs += 1;
    }
    pass(format!("{identities} skein identities, trefoil = {web}, {pairs} move pairs"))
}

fn c7_confluence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut largest = 0;
    for k in 0..50 {
        let w = random_closed_web(&mut rng, 12);
        largest = largest.max(w.nv());
        let det = e(evaluate_closed(&w))?;
        for _ in 0..3 {
            let v = evaluate_closed_randomized(&w, &mut rng);
            ensure(v == det, || format!("web {k}: {v} vs {det}"))?;
        }
    }
    pass(format!("50 webs, up to {largest} vertices, 3 random orders each"))
}

fn c8_dimensions() -> Outcome {
    let l1 = Weight::new(1, 0);
    let l2 = Weight::new(0, 1);
    let mut cases = 0;
    for a in 0..=4u32 {
        for b in 0..=4u32 {
            if a == 0 {
                continue;
            }
            let webs = e(single_expansion_webs(a as usize, b as usize))?.len() as u64;
            let (boundary, formula) = if b == 0 {
                let mut ws = vec![l1; a as usize];
                ws.extend([l2, Weight::new(0, a - 1)]);
                (ws, a as u64)
            } else {
                let mut ws = vec![l1; a as usize + 1];
                ws.extend(vec![l2; b as usize]);
                ws.push(Weight::new(b - 1, a));
                (ws, ((a + 1) * b) as u64)
            };
            let dim = e(inv_dim(Algebra::Sl3, &boundary))?;
            ensure(webs == dim && dim == formula, || format!("({a},{b}): {webs} webs, dim {dim}, formula {formula}"))?;
            cases += 1;
        }
    }
    for n in 1..=6u32 {
        for (f, last) in [(l1, Weight::new(n - 1, 0)), (l2, Weight::new(0, n - 1))] {
            let mut ws = vec![f; n as usize + 1];
            ws.push(last);
            let dim = e(inv_dim(Algebra::Sp4, &ws))?;
            ensure(dim == (n * (n + 1) / 2) as u64, || format!("sp4 n={n}: {dim}"))?;
            cases += 1;
        }
    }
    pass(format!("{cases} dimension checks"))
}

fn c9_sl2() -> Outcome {
    let mut rep = e(jw_projectors(6, &Config::default()))?;
    rep.absorb(e(theta_sl2_formula(3))?);
    ensure(rep.passed(), || rep.summary())?;
    pass(format!("{} checks", rep.checked))
}

fn c10_ideals() -> Outcome {
    let cfg = Config::default();
    let three = qint(3);
    for p in [2u64, 3, 5] {
        let gen = &three.pow(p as u32) - &three;
        ensure(e(ideal_member(&gen, IdealKind::Sl3, p))?, || format!("[3]^{p} - [3] not in I"))?;
        ensure(!e(ideal_member(&LaurentPoly::one(), IdealKind::Sl3, p))?, || format!("1 in I for p={p}"))?;
    }
    let links = [
        ("trefoil", e(braid_closure(2, &[1, 1, 1]))?),
        ("Hopf", e(braid_closure(2, &[1, 1]))?),
        ("figure eight", e(braid_closure(3, &[1, -2, 1, -2]))?),
    ];
    let mut checks = 0;
    for (name, l) in &links {
        let gl = e(g3(l, &vectors(l), &cfg))?;
        for p in [2u64, 3, 5] {
            let mut copies = l.clone();
            for _ in 1..p {
                copies = copies.disjoint_union(l);
            }
            let gp = e(g3(&copies, &vectors(&copies), &cfg))?;
            ensure(e(period_check(&gp, &gl, p, IdealKind::Sl3))?, || format!("{name}, p={p}"))?;
            checks += 1;
        }
    }
    pass(format!("generators for p=2,3,5; {checks} period checks"))
}

fn c11_six_one() -> Outcome {
    let c = prime_web_6_1_expected();
    let strict = e(sl3_power_residue(&c, 6, 6, true))?;
    let sound = e(sl3_power_residue(&c, 6, 6, false))?;
    let show = |parts: &[(u64, Residue)]| {
        parts.iter().map(|(p, r)| format!("p={p}: {r}")).collect::<Vec<_>>().join("; ")
    };
    let detail = format!("strict [{}], obstruction [{}]", show(&strict), show(&sound));
    Ok(match combine(&strict) {
        Residue::NotExists { .. } => Verdict::Pass(detail),
        Residue::Undecided { reason } if reason == "repeated factor" => Verdict::Waived(detail),
        _ => Verdict::Fail(detail),
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<u64>, fn() -> Outcome); 11] = [
        ("example expansions", Some(1), c1_example_expansions),
        ("clasp axioms", Some(120), c2_clasp_axioms),
        ("sl(3) recurrences", Some(10), c3_sl3_recurrences),
        ("sp(4) recurrences", Some(10), c4_sp4_recurrences),
        ("graph invariant", Some(30), c5_graph_invariant),
        ("link invariant", Some(120), c6_link_invariant),
        ("confluence", Some(60), c7_confluence),
        ("dimension cross-validation", None, c8_dimensions),
        ("sl(2) oracle", None, c9_sl2),
        ("ideal arithmetic", None, c10_ideals),
        ("6_1 sixth-power residue", None, c11_six_one),
    ];
    let mut failed = 0;
    for (k, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = f();
        let took = start.elapsed();
        let slow = limit.is_some_and(|s| took > Duration::from_secs(s));
        let limit_text = limit.map_or(String::new(), |s| format!(" (limit {s} s)"));
        let (tag, detail) = match verdict {
            Ok(Verdict::Pass(d)) if slow => ("FAIL", format!("too slow{limit_text}; {d}")),
            Ok(Verdict::Pass(d)) => ("PASS", d),
            Ok(Verdict::Waived(d)) => ("WAIVED", d),
            Ok(Verdict::Fail(d)) => ("FAIL", d),
            Err(d) => ("FAIL", d),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {tag:<6} {name} [{:.2} s]: {detail}", k + 1, took.as_secs_f64());
    }
    if failed == 0 {
        println!("acceptance: all criteria met");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
