use std::path::{Path, PathBuf};

use clap::Parser;
use cmpl_core::algebra::{ExtElem, ExtField, Fq, Poly, RatFunc};
use cmpl_core::completions::{Embedding, Place};
use cmpl_core::continuation::{extended_cmspl, log_commute_check, log_eval_v};
use cmpl_core::criterion::{theorem_harness, torsion_search, zeta_euler_check, Flag, Torsion};
use cmpl_core::polylog::{cmspl_eval_v, star_residue_inf, star_residue_v, CompositionIndex};
use cmpl_core::tmodule::{build_tmodule, closed_form_corner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use crate::args::Cli;
use crate::commands;

type Check = Box<dyn Fn(u64) -> Result<(), String> + Send + Sync>;

pub struct Outcome {
    pub name: String,
    pub error: Option<String>,
}

fn f3() -> Fq {
    Fq::prime(3).expect("3 is prime")
}

fn p3(c: &[i64]) -> Poly {
    Poly::from_ints(f3(), c)
}

fn in_k(xs: &[Poly]) -> (std::sync::Arc<ExtField>, Vec<ExtElem>) {
    let k = ExtField::trivial(f3());
    let u = xs
        .iter()
        .map(|x| ExtElem::from_rat(&k, RatFunc::from_poly(x.clone())))
        .collect();
    (k, u)
}

fn emb_k(v: &[i64]) -> Result<Embedding, String> {
    let place = Place::new(p3(v)).map_err(|e| e.to_string())?;
    Embedding::new(&ExtField::trivial(f3()), &place, None).map_err(|e| e.to_string())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn idx(s: &[u32]) -> CompositionIndex {
    CompositionIndex::new(s.to_vec()).expect("positive entries")
}

fn random_case(rng: &mut ChaCha8Rng, r: usize) -> (CompositionIndex, Vec<Poly>) {
    let s: Vec<u32> = (0..r).map(|_| rng.gen_range(1..=2)).collect();
    let u = (0..r)
        .map(|_| {
            let c: Vec<i64> = (0..2).map(|_| rng.gen_range(0..3)).collect();
            let p = p3(&c);
            if p.is_zero() {
                p3(&[1])
            } else {
                p
            }
        })
        .collect();
    (idx(&s), u)
}

fn builtin() -> Vec<(&'static str, Check)> {
    let e = |x: cmpl_core::Error| x.to_string();
    vec![
        (
            "closed-form",
            Box::new(move |_| {
                let (k, u) = in_k(&[p3(&[0, 1]), p3(&[1, 1])]);
                let s = idx(&[1, 2]);
                let g = build_tmodule(&s, &u, &k).map_err(e)?;
                let p = g.log_coeffs(4).map_err(e)?;
                for (i, pi) in p.iter().enumerate() {
                    for m in 1..=2 {
                        for l in 1..=m {
                            let want = closed_form_corner(&s, &u, &k, i, l, m).map_err(e)?;
                            ensure(g.corner(pi, l, m) == &want, || {
                                format!("corner ({l},{m}) of P_{i}")
                            })?;
                        }
                    }
                }
                Ok(())
            }),
        ),
        (
            "star-identity",
            Box::new(move |seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..3 {
                    let r = rng.gen_range(1..=3);
                    let (s, u) = random_case(&mut rng, r);
                    let emb = emb_k(&[0, 1])?;
                    // multiples of θ converge at v = θ
                    let shifted: Vec<Poly> = u.iter().map(|x| x.shift(1)).collect();
                    let (_, ue) = in_k(&shifted);
                    let res = star_residue_v(&s, &ue, &emb, 20).map_err(e)?;
                    ensure(res.vanishes_to(20), || format!("v-adic residue for {s:?}"))?;
                    let uk: Vec<RatFunc> =
                        u.iter().map(|x| RatFunc::from_poly(x.clone())).collect();
                    let res = star_residue_inf(&s, &uk, -20).map_err(e)?;
                    ensure(res.is_zero(), || format!("∞-adic residue for {s:?}"))?;
                }
                Ok(())
            }),
        ),
        (
            "log-identity",
            Box::new(move |_| {
                let emb = emb_k(&[1, 1])?;
                let (k, u) = in_k(&[p3(&[0, 1]), p3(&[1, 1])]);
                let s = idx(&[1, 1]);
                let g = build_tmodule(&s, &u, &k).map_err(e)?;
                let y = log_eval_v(&g, &g.special_point(), &emb, 20).map_err(e)?;
                let rev: Vec<ExtElem> = u.iter().rev().cloned().collect();
                let both = cmspl_eval_v(&s.reversed(), &rev, &emb, 20).map_err(e)?;
                let last = cmspl_eval_v(&idx(&[1]), &u[1..], &emb, 20).map_err(e)?;
                ensure(y[s.block_bottom(1) - 1].agrees_with(&both.neg()), || {
                    "ℓ = 1".into()
                })?;
                ensure(y[s.block_bottom(2) - 1].agrees_with(&last), || {
                    "ℓ = 2".into()
                })
            }),
        ),
        (
            "commute",
            Box::new(move |_| {
                let emb = emb_k(&[0, 1])?;
                let (k, u) = in_k(&[p3(&[0, 1]), p3(&[0, 1, 1])]);
                let g = build_tmodule(&idx(&[1, 2]), &u, &k).map_err(e)?;
                let x = g.special_point();
                for a in [p3(&[0, 1]), p3(&[1, 1]), p3(&[2, 0, 1])] {
                    let res = log_commute_check(&g, &x, &a, &emb, 20).map_err(e)?;
                    ensure(res.iter().all(|r| r.vanishes_to(20)), || {
                        format!("a = {}", a.fmt_var("t"))
                    })?;
                }
                Ok(())
            }),
        ),
        (
            "lambda",
            Box::new(move |_| {
                let fq = f3();
                let m = vec![
                    RatFunc::from_poly(p3(&[0, -2])),
                    RatFunc::zero(fq),
                    RatFunc::one(fq),
                ];
                let k = ExtField::new(m).map_err(e)?;
                let place = Place::new(p3(&[1, 1])).map_err(e)?;
                let emb = Embedding::new(&k, &place, Some(p3(&[1]))).map_err(e)?;
                let lambda = ExtElem::generator(&k);
                let s = idx(&[1]);
                let g = build_tmodule(&s, std::slice::from_ref(&lambda), &k).map_err(e)?;
                let t = torsion_search(&g, &g.special_point(), 1).map_err(e)?;
                ensure(t == Torsion::Certificate(p3(&[0, 1])), || {
                    format!("certificate {}", t.label())
                })?;
                let star =
                    extended_cmspl(&s, std::slice::from_ref(&lambda), &emb, 24).map_err(e)?;
                ensure(star[0].is_exact_zero(), || {
                    "Li*_1(λ) is not exactly 0".into()
                })?;
                let rep = theorem_harness("lambda", &s, &[lambda], &emb, 12, 4).map_err(e)?;
                ensure(rep.flag == Flag::Consistent, || {
                    format!("flag {:?}", rep.flag)
                })
            }),
        ),
        (
            "euler-zeta",
            Box::new(move |_| {
                let two = zeta_euler_check(f3(), 2, -40, 4).map_err(e)?;
                ensure(two.verdict.is_eulerian(), || "ζ(2) not eulerian".into())?;
                let three = zeta_euler_check(f3(), 3, -40, 4).map_err(e)?;
                ensure(!three.verdict.is_eulerian(), || "ζ(3) eulerian".into())
            }),
        ),
    ]
}

/// Built-in fixture directory of this crate.
pub fn default_fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture_checks(dir: &Path) -> Result<Vec<(String, Check)>, String> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|err| format!("reading {}: {err}", dir.display()))?
        .filter_map(|d| d.ok().map(|d| d.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files
        .into_iter()
        .map(|path| {
            let name = format!(
                "fixture:{}",
                path.file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default()
            );
            let check: Check = Box::new(move |_| run_fixture(&path));
            (name, check)
        })
        .collect())
}

/// A fixture is {"args": [subcommand, flags…], "expected": report}.
pub fn run_fixture(path: &Path) -> Result<(), String> {
    let text = std::fs::read_to_string(path).map_err(|err| err.to_string())?;
    let fx: Value =
        serde_json::from_str(&text).map_err(|err| format!("malformed fixture: {err}"))?;
    let args: Vec<String> = fx["args"]
        .as_array()
        .ok_or("fixture has no args")?
        .iter()
        .map(|a| a.as_str().map(str::to_string).ok_or("non-string arg"))
        .collect::<Result<_, _>>()?;
    let argv = std::iter::once("cmpl".to_string()).chain(args);
    let cli = Cli::try_parse_from(argv).map_err(|err| err.to_string())?;
    let (name, common) = crate::split(&cli.command);
    let got = commands::run(name, common).map_err(|err| err.to_string())?;
    ensure(got == fx["expected"], || {
        format!(
            "output differs from expected:\n{}",
            serde_json::to_string_pretty(&got).unwrap_or_default()
        )
    })
}

/// Runs the checks whose names contain `filter`, in parallel, reporting in a
/// fixed order.
pub fn run(
    filter: Option<&str>,
    fixtures: Option<&Path>,
    seed: u64,
    jobs: Option<usize>,
) -> Result<Vec<Outcome>, String> {
    let mut checks: Vec<(String, Check)> = builtin()
        .into_iter()
        .map(|(n, c)| (n.to_string(), c))
        .collect();
    let dir = fixtures
        .map(Path::to_path_buf)
        .unwrap_or_else(default_fixtures);
    if fixtures.is_some() || dir.is_dir() {
        checks.extend(fixture_checks(&dir)?);
    }
    checks.retain(|(n, _)| filter.is_none_or(|f| n.contains(f)));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|err| err.to_string())?;
    Ok(pool.install(|| {
        checks
            .par_iter()
            .map(|(name, f)| Outcome {
                name: name.clone(),
                error: f(seed).err(),
            })
            .collect()
    }))
}

pub fn table(outcomes: &[Outcome]) -> String {
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for o in outcomes {
        match &o.error {
            None => out.push_str(&format!("{:<width$}  PASS\n", o.name)),
            Some(err) => out.push_str(&format!(
                "{:<width$}  FAIL  {}\n",
                o.name,
                err.lines().next().unwrap_or("")
            )),
        }
    }
    let failed = outcomes.iter().filter(|o| o.error.is_some()).count();
    out.push_str(&format!("{} checks, {} failed\n", outcomes.len(), failed));
    out
}
