use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "cmpl",
    version,
    about = "Carlitz multiple polylogarithms over F_q(theta)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Li_s(u) at ∞ or at v
    Cmpl(Common),
    /// Li*_s(u) at ∞ or at v
    Cmspl(Common),
    /// Exact logarithm coefficients P_0..P_n of G_{s,u}
    LogCoeffs(Common),
    /// log_G at a point (default: the special point) in k_v
    LogEval(Common),
    /// Extended Li* and Li values on the closed unit polydisc
    Continue(Common),
    /// Bounded search for a ∈ F_q[t] with ρ_a(w) = 0
    Torsion(Common),
    /// Vanishing / torsion harness
    Check(Common),
    /// Eulerianness of Li_s(u) at ∞, or of ζ_A(n) with --n and no --s
    Euler(Common),
    /// Partial sums of ζ_A(n) over monic a of degree ≤ --deg-bound
    Zeta(Common),
    /// The matrices N, E and the special point of G_{s,u}
    TmoduleShow(Common),
    /// Built-in invariant checks plus golden fixtures
    Selftest(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlaceKind {
    V,
    Inf,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Size of the constant field
    #[arg(long)]
    pub q: Option<u32>,
    /// Modulus of F_q over F_p as digits, constant term first
    #[arg(long)]
    pub fq_modulus: Option<String>,
    /// Composition index, e.g. "1,2"
    #[arg(long)]
    pub s: Option<String>,
    /// Arguments, e.g. "theta+1;2*theta"
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    /// Point of G, `;`-separated (default: the special point)
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    /// Minimal polynomial of x over k, e.g. "x^2-2*theta"
    #[arg(long, allow_hyphen_values = true)]
    pub ext_minpoly: Option<String>,
    /// Monic irreducible v ∈ F_q[theta]
    #[arg(long)]
    pub v: Option<String>,
    /// Residue of the chosen root of the minimal polynomial modulo v
    #[arg(long)]
    pub root: Option<String>,
    #[arg(long, value_enum)]
    pub place: Option<PlaceKind>,
    /// v-adic digits, or the exponent bound at ∞
    #[arg(long, allow_hyphen_values = true)]
    pub prec: Option<i64>,
    #[arg(long)]
    pub deg_bound: Option<usize>,
    #[arg(long)]
    pub height: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Multiplier a(t) for log-eval's commute check
    #[arg(long)]
    pub a: Option<String>,
    /// Case label for check
    #[arg(long)]
    pub case: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Directory of golden fixtures for selftest
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
    /// Only run selftest checks whose name contains this
    #[arg(long)]
    pub filter: Option<String>,
}

impl Common {
    /// Fills unset fields from config entries.
    pub fn merge(
        &mut self,
        cfg: &std::collections::BTreeMap<String, String>,
    ) -> cmpl_core::Result<()> {
        use cmpl_core::Error;
        fn num<T: std::str::FromStr>(k: &str, v: &str) -> cmpl_core::Result<T> {
            v.parse()
                .map_err(|_| Error::Parse(format!("config {k} = {v:?} is not a number")))
        }
        for (k, v) in cfg {
            let v = v.clone();
            match k.as_str() {
                "q" => self.q = self.q.or(Some(num(k, &v)?)),
                "fq-modulus" => self.fq_modulus = self.fq_modulus.take().or(Some(v)),
                "s" => self.s = self.s.take().or(Some(v)),
                "u" => self.u = self.u.take().or(Some(v)),
                "w" => self.w = self.w.take().or(Some(v)),
                "ext-minpoly" => self.ext_minpoly = self.ext_minpoly.take().or(Some(v)),
                "v" => self.v = self.v.take().or(Some(v)),
                "root" => self.root = self.root.take().or(Some(v)),
                "place" => {
                    let p = PlaceKind::from_str(&v, true)
                        .map_err(|_| Error::Parse(format!("config place = {v:?}")))?;
                    self.place = self.place.or(Some(p));
                }
                "prec" => self.prec = self.prec.or(Some(num(k, &v)?)),
                "deg-bound" => self.deg_bound = self.deg_bound.or(Some(num(k, &v)?)),
                "height" => self.height = self.height.or(Some(num(k, &v)?)),
                "n" => self.n = self.n.or(Some(num(k, &v)?)),
                "a" => self.a = self.a.take().or(Some(v)),
                "case" => self.case = self.case.take().or(Some(v)),
                "seed" => self.seed = self.seed.or(Some(num(k, &v)?)),
                "jobs" => self.jobs = self.jobs.or(Some(num(k, &v)?)),
                "out" => self.out = self.out.take().or(Some(v.into())),
                "fixtures" => self.fixtures = self.fixtures.take().or(Some(v.into())),
                "filter" => self.filter = self.filter.take().or(Some(v)),
                _ => return Err(Error::Parse(format!("unknown config key {k:?}"))),
            }
        }
        Ok(())
    }
}
