//! Command-line front end.

pub mod links;
mod output;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::braid::{closure, fiber_data, state_graph, BraidWord, ClosedBraidLink, FiberData};
use crate::cyclo::{CycloContext, CyclotomicElement};
use crate::error::{Error, Result};
use crate::fibered::{adjust_linking, condition_club_gcd, detect_stallings_twist, family_lnm, homogenize, torus_braid};
use crate::invariants::cache::{cached_tv, Cache};
use crate::invariants::certify::certify_infinite_order;
use crate::invariants::{growth_series, integrality_check, ExactForm, InvariantOptions, NumberRepr};
use crate::parallel::with_jobs;
use crate::scalar::{Backend, Scalar};
use crate::skein::{colored_bracket_auto, recognize, FastPath, RootData, CONVENTION_TAG};

pub use links::{named_link, parse_levels};
pub use output::Format;

#[derive(Parser, Debug)]
#[command(name = "qtv", version, about = "Quantum invariants of closed-braid link complements")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Maximum number of colorings in one sum.
    #[arg(long, global = true)]
    pub budget_colorings: Option<u128>,
    /// Maximum total cable width.
    #[arg(long, global = true)]
    pub budget_cable: Option<usize>,
    /// Skip the on-disk cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct LinkInput {
    /// Braid word, e.g. "-2 1 -2 1".
    #[arg(long, allow_hyphen_values = true)]
    pub braid: Option<String>,
    /// Named link: 4_1, borromean, unknot, hopf, trefoil, T_p_q, L_n_m.
    #[arg(long)]
    pub link: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct LinkArgs {
    #[command(flatten)]
    pub input: LinkInput,
    /// Strand count, when larger than the letters imply.
    #[arg(long)]
    pub strands: Option<usize>,
}

impl LinkArgs {
    pub fn braid(&self) -> Result<BraidWord> {
        match (&self.input.braid, &self.input.link) {
            (Some(text), _) => BraidWord::parse(text, self.strands).map_err(|e| Error::Parse(e.to_string())),
            (None, Some(name)) => named_link(name),
            (None, None) => Err(Error::Parse("one of --braid or --link is required".into())),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FastPathArg {
    /// Use a closed form when the braid is recognized.
    Auto,
    /// Require the figure-eight closed form.
    Habiro,
    /// Require the torus-knot closed form.
    Torus,
    /// Always use the generic engine.
    Off,
}

#[derive(Args, Debug, Clone)]
pub struct EvalArgs {
    /// Exact cyclotomic arithmetic instead of complex doubles.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, value_enum, default_value_t = FastPathArg::Auto)]
    pub fast_path: FastPathArg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Turaev–Viro invariant of the link complement.
    Tv {
        #[command(flatten)]
        link: LinkArgs,
        /// Levels: R, A..B or R1,R2,...
        #[arg(long)]
        r: String,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Growth series (2π/r)·log TV_r.
    Growth {
        #[command(flatten)]
        link: LinkArgs,
        #[arg(long, default_value_t = 5)]
        rmin: u32,
        #[arg(long, conflicts_with = "r")]
        rmax: Option<u32>,
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        volume: Option<f64>,
        /// Allow the generic engine beyond r = 31.
        #[arg(long)]
        force_generic: bool,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Search colorings for |RT_r| above the dimension bound.
    Certify {
        #[command(flatten)]
        link: LinkArgs,
        #[arg(long)]
        r: String,
        /// Fiber genus; defaults to the Seifert surface of the braid.
        #[arg(long)]
        genus: Option<i64>,
        /// Boundary count; defaults to the component count.
        #[arg(long)]
        boundary: Option<i64>,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Exact integrality of TV_r of a torus link or a braid closure.
    Integrality {
        #[arg(long, requires = "q", conflicts_with_all = ["braid", "link"])]
        p: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<i32>,
        #[arg(long, allow_hyphen_values = true)]
        braid: Option<String>,
        #[arg(long)]
        link: Option<String>,
        #[arg(long)]
        r: String,
    },
    /// Homogenize, read off the fiber, then growth and certificate search.
    AmuPipeline {
        #[command(flatten)]
        link: LinkArgs,
        #[arg(long, default_value = "5")]
        r: String,
        /// Homogenize even when the input braid is already homogeneous.
        #[arg(long)]
        force_homogenize: bool,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Framing-corrected colored Kauffman bracket.
    Jones {
        #[command(flatten)]
        link: LinkArgs,
        /// One color per component, or a single color for all.
        #[arg(long, value_delimiter = ',')]
        color: Vec<u32>,
        #[arg(long)]
        r: i64,
        /// Divide by the unknot value of the first color.
        #[arg(long)]
        normalized: bool,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Stallings homogenization with an added unknotted component.
    Homogenize {
        #[command(flatten)]
        link: LinkArgs,
        /// Linking numbers of the new component with each original component.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        targets: Option<Vec<i64>>,
    },
    /// The L_{n,m} family.
    Family {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Torus link braid (σ1⋯σ_{p−1})^q.
    Torus {
        #[arg(long)]
        p: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: i32,
    },
    /// Stallings-twist pattern sites in the state graph.
    DetectTwist {
        #[command(flatten)]
        link: LinkArgs,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments, runs the command and renders the report.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let jobs = cli.global.jobs;
    match with_jobs(jobs, || dispatch(&cli)) {
        Ok((report, code)) => match report.render(cli.global.format) {
            Ok(stdout) => Outcome { code, stdout, stderr: String::new() },
            Err(e) => failure(&e),
        },
        Err(e) => failure(&e),
    }
}

fn failure(e: &Error) -> Outcome {
    let body = json!({ "error": e.to_string(), "code": e.exit_code() });
    Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("{body}\n") }
}

fn options<S: Scalar>(g: &GlobalArgs, eval: Option<&EvalArgs>) -> InvariantOptions {
    let mut o = InvariantOptions::for_backend::<S>();
    if let Some(b) = g.budget_colorings {
        o.coloring_budget = b;
    }
    if let Some(c) = g.budget_cable {
        o.engine.cable_cap = c;
    }
    if let Some(e) = eval {
        o.use_fast_path = e.fast_path != FastPathArg::Off;
    }
    o
}

fn cache(g: &GlobalArgs) -> Option<Cache> {
    (!g.no_cache).then(Cache::from_env)
}

/// Checks that a requested closed form applies to the braid.
fn check_fast_path(link: &ClosedBraidLink, eval: &EvalArgs) -> Result<Option<FastPath>> {
    let found = if link.component_count() == 1 { recognize(&link.braid) } else { None };
    let ok = match eval.fast_path {
        FastPathArg::Auto => true,
        FastPathArg::Off => return Ok(None),
        FastPathArg::Habiro => matches!(found, Some(FastPath::FigureEight)),
        FastPathArg::Torus => matches!(found, Some(FastPath::TorusKnot { .. })),
    };
    if !ok {
        return Err(Error::FastPathRequired(format!("braid {} is not recognized by the requested closed form", link.braid)));
    }
    Ok(found)
}

fn dispatch(cli: &Cli) -> Result<(output::Report, i32)> {
    let g = &cli.global;
    match &cli.command {
        Command::Tv { link, r, eval } => {
            let l = closure(&link.braid()?);
            let levels = parse_levels(r)?;
            check_fast_path(&l, eval)?;
            if eval.exact {
                tv_cmd::<CyclotomicElement>(g, &l, &levels, eval)
            } else {
                tv_cmd::<Complex64>(g, &l, &levels, eval)
            }
        }
        Command::Growth { link, rmin, rmax, r, volume, force_generic, eval } => {
            let l = closure(&link.braid()?);
            let levels = match (r, rmax) {
                (Some(spec), _) => parse_levels(spec)?,
                (None, Some(max)) => parse_levels(&format!("{rmin}..{max}"))?,
                (None, None) => return Err(Error::Parse("growth needs --r or --rmax".into())),
            };
            let fp = check_fast_path(&l, eval)?;
            let run = |exact: bool| {
                if exact {
                    let mut o = options::<CyclotomicElement>(g, Some(eval));
                    o.force_generic = *force_generic;
                    growth_series::<CyclotomicElement>(&l, &levels, *volume, &o)
                } else {
                    let mut o = options::<Complex64>(g, Some(eval));
                    o.force_generic = *force_generic;
                    growth_series::<Complex64>(&l, &levels, *volume, &o)
                }
            };
            let series = run(eval.exact)?;
            let value = json!({
                "link": l.braid.canonical(),
                "backend": backend(eval.exact),
                "convention": CONVENTION_TAG,
                "fast_path": fp.filter(|_| eval.fast_path != FastPathArg::Off).map(|f| f.name()),
                "volume": volume,
                "entries": series.entries.iter().map(|e| json!({
                    "r": e.r,
                    "tv": crate::invariants::sig12(e.tv),
                    "y": e.y.map(crate::invariants::sig12),
                })).collect::<Vec<_>>(),
                "max_y": series.max_y().map(crate::invariants::sig12),
                "last_y": series.last_y().map(crate::invariants::sig12),
                "gaps": series.gaps().map(|gs| gs.into_iter().map(|x| x.map(crate::invariants::sig12)).collect::<Vec<_>>()),
                "strictly_increasing": series.is_strictly_increasing(),
            });
            Ok((output::Report::with_csv(value, series.to_csv()), 0))
        }
        Command::Certify { link, r, genus, boundary, eval } => {
            let l = closure(&link.braid()?);
            let levels = parse_levels(r)?;
            let (gen, bnd) = match (genus, boundary) {
                (Some(a), Some(b)) => (*a, *b),
                _ => {
                    let f = fiber_data(&l)?;
                    (genus.unwrap_or(f.genus), boundary.unwrap_or(f.boundary))
                }
            };
            check_fast_path(&l, eval)?;
            let (results, code) = if eval.exact {
                certify_cmd::<CyclotomicElement>(g, &l, &levels, gen, bnd, eval)?
            } else {
                certify_cmd::<Complex64>(g, &l, &levels, gen, bnd, eval)?
            };
            let value = json!({
                "link": l.braid.canonical(),
                "backend": backend(eval.exact),
                "genus": gen,
                "boundary": bnd,
                "results": results,
            });
            Ok((output::Report::json(value), code))
        }
        Command::Integrality { p, q, braid, link, r } => {
            let b = match (p, q, braid, link) {
                (Some(p), Some(q), _, _) => torus_braid(*p, *q).map_err(|e| Error::Parse(e.to_string()))?,
                (None, _, Some(text), _) => BraidWord::parse(text, None).map_err(|e| Error::Parse(e.to_string()))?,
                (None, _, None, Some(name)) => named_link(name)?,
                _ => return Err(Error::Parse("integrality needs --p/--q, --braid or --link".into())),
            };
            let l = closure(&b);
            let levels = parse_levels(r)?;
            let opts = options::<CyclotomicElement>(g, None);
            let mut rows = Vec::new();
            let mut results = Vec::new();
            for &lvl in &levels {
                let root = RootData::<CyclotomicElement>::new(lvl as i64)?;
                let rep = integrality_check(&l, &root, &opts)?;
                let coprime = match (p, q) {
                    (Some(p), Some(q)) => Some(gcd(lvl as u64, (*p as u64) * q.unsigned_abs() as u64) == 1),
                    _ => None,
                };
                rows.push(vec![
                    lvl.to_string(),
                    rep.value.clone().unwrap_or_default(),
                    rep.is_integer.to_string(),
                    rep.galois_fixed.to_string(),
                ]);
                results.push(json!({
                    "r": lvl,
                    "coprime": coprime,
                    "is_integer": rep.is_integer,
                    "value": rep.value,
                    "residual": crate::invariants::sig12(rep.residual),
                    "galois_fixed": rep.galois_fixed,
                    "tv": NumberRepr::from_scalar(&rep.tv),
                }));
            }
            let value = json!({ "link": l.braid.canonical(), "backend": "exact", "results": results });
            Ok((output::Report::with_rows(value, &["r", "value", "is_integer", "galois_fixed"], rows), 0))
        }
        Command::AmuPipeline { link, r, force_homogenize, eval } => {
            let input = link.braid()?;
            let levels = parse_levels(r)?;
            let (l, stallings, linking) = if input.is_homogeneous() && !force_homogenize {
                (closure(&input), None, None)
            } else {
                let h = homogenize(&input);
                let mut targets = vec![0; h.linking_vector.len()];
                targets[0] = 1;
                let h = adjust_linking(&h, &targets)?;
                h.check_invariants()?;
                (h.closure(), Some(h.stallings_component), Some(h.linking_vector))
            };
            let f = fiber_data(&l)?;
            let (growth, certs, code) = if eval.exact {
                pipeline_tail::<CyclotomicElement>(g, &l, &levels, &f, eval)?
            } else {
                pipeline_tail::<Complex64>(g, &l, &levels, &f, eval)?
            };
            let value = json!({
                "input": input.canonical(),
                "homogenized": stallings.is_some(),
                "link": link_report(&l, stallings),
                "stallings_component": stallings,
                "linking_vector": linking,
                "fiber": f,
                "growth": growth,
                "certificates": certs,
            });
            Ok((output::Report::json(value), code))
        }
        Command::Jones { link, color, r, normalized, eval } => {
            let l = closure(&link.braid()?);
            check_fast_path(&l, eval)?;
            let coloring: Vec<u32> = match color.len() {
                1 => vec![color[0]; l.component_count()],
                n if n == l.component_count() => color.clone(),
                n => return Err(Error::ColoringMismatch { got: n, expected: l.component_count() }),
            };
            let v = if eval.exact {
                jones_cmd::<CyclotomicElement>(g, &l, &coloring, *r, *normalized, eval)?
            } else {
                jones_cmd::<Complex64>(g, &l, &coloring, *r, *normalized, eval)?
            };
            let value = json!({
                "link": l.braid.canonical(),
                "r": r,
                "coloring": coloring,
                "normalized": normalized,
                "backend": backend(eval.exact),
                "convention": CONVENTION_TAG,
                "value": v,
            });
            Ok((output::Report::json(value), 0))
        }
        Command::Homogenize { link, targets } => {
            let input = link.braid()?;
            let mut h = homogenize(&input);
            if let Some(t) = targets {
                h = adjust_linking(&h, t)?;
            }
            h.check_invariants()?;
            let l = h.closure();
            let value = json!({
                "input": input.canonical(),
                "report": link_report(&l, Some(h.stallings_component)),
                "stallings_component": h.stallings_component,
                "original_component": h.original_component,
                "linking_vector": h.linking_vector,
                "club_gcd": condition_club_gcd(&l, h.stallings_component).ok(),
            });
            Ok((output::Report::braid(value, h.braid.text()), 0))
        }
        Command::Family { n, m } => {
            let b = family_lnm(*n, *m)?;
            let l = closure(&b);
            Ok((output::Report::braid(json!(link_report(&l, None)), b.text()), 0))
        }
        Command::Torus { p, q } => {
            let b = torus_braid(*p, *q)?;
            let l = closure(&b);
            Ok((output::Report::braid(json!(link_report(&l, None)), b.text()), 0))
        }
        Command::DetectTwist { link } => {
            let b = link.braid()?;
            let sites = detect_stallings_twist(&state_graph(&b));
            let value = json!({ "link": b.canonical(), "site_count": sites.len(), "sites": sites });
            Ok((output::Report::json(value), 0))
        }
    }
}

fn backend(exact: bool) -> &'static str {
    if exact {
        Backend::Exact.tag()
    } else {
        Backend::Float.tag()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Serialize)]
struct LinkReport {
    braid: String,
    canonical: String,
    strands: usize,
    crossings: usize,
    components: usize,
    homogeneous: bool,
    linking_matrix: Vec<Vec<i64>>,
    /// Condition gcd test with K the given component, or with each component.
    club_gcd: Vec<Option<bool>>,
    fiber_data: Option<FiberData>,
}

fn link_report(l: &ClosedBraidLink, k: Option<usize>) -> LinkReport {
    let club = match k {
        Some(k) => vec![condition_club_gcd(l, k).ok()],
        None => (0..l.component_count()).map(|k| condition_club_gcd(l, k).ok()).collect(),
    };
    LinkReport {
        braid: l.braid.text(),
        canonical: l.braid.canonical(),
        strands: l.braid.strands(),
        crossings: l.braid.crossing_count(),
        components: l.component_count(),
        homogeneous: l.braid.is_homogeneous(),
        linking_matrix: l.linking_matrix.clone(),
        club_gcd: club,
        fiber_data: fiber_data(l).ok(),
    }
}

fn exact_summary(repr: &NumberRepr) -> Result<(Option<bool>, Option<String>)> {
    let (Some(order), Some(coeffs)) = (repr.order, &repr.coeffs) else {
        return Ok((None, None));
    };
    let v = CyclotomicElement::from_coefficient_strings(&CycloContext::get(order)?, coeffs)?;
    Ok((Some(v.as_integer().is_some()), v.is_rational().map(|q| q.to_string())))
}

fn tv_cmd<S: Scalar + ExactForm>(g: &GlobalArgs, l: &ClosedBraidLink, levels: &[u32], eval: &EvalArgs) -> Result<(output::Report, i32)> {
    let opts = options::<S>(g, Some(eval));
    let cache = cache(g);
    let mut results = Vec::new();
    let mut rows = Vec::new();
    for &r in levels {
        let root = RootData::<S>::new(r as i64)?;
        let (rec, _) = cached_tv(cache.as_ref(), l, &root, &opts)?;
        let (is_integer, value) = exact_summary(&rec.tv_value)?;
        rows.push(vec![
            r.to_string(),
            rec.tv_value.re.clone(),
            value.clone().unwrap_or_default(),
            is_integer.map(|b| b.to_string()).unwrap_or_default(),
        ]);
        results.push(json!({ "r": r, "tv": rec.tv_value, "is_integer": is_integer, "value": value }));
    }
    let value = json!({
        "link": l.braid.canonical(),
        "components": l.component_count(),
        "backend": S::backend(),
        "convention": CONVENTION_TAG,
        "results": results,
    });
    Ok((output::Report::with_rows(value, &["r", "tv", "value", "is_integer"], rows), 0))
}

fn certify_cmd<S: Scalar>(
    g: &GlobalArgs,
    l: &ClosedBraidLink,
    levels: &[u32],
    gen: i64,
    bnd: i64,
    eval: &EvalArgs,
) -> Result<(Vec<Value>, i32)> {
    let opts = options::<S>(g, Some(eval));
    let mut out = Vec::new();
    let mut code = 0;
    for &r in levels {
        let root = RootData::<S>::new(r as i64)?;
        let res = certify_infinite_order(l, &root, gen, bnd, &opts)?;
        let replay = match &res.certificate {
            Some(c) => Some(c.replay(l)?),
            None => None,
        };
        if !res.is_definite() {
            code = 3;
        }
        out.push(json!({
            "r": r,
            "certificate": res.certificate,
            "replay": replay,
            "searched": res.searched.to_string(),
            "total": res.total.to_string(),
            "definite": res.is_definite(),
            "best": res.best.map(|(c, m)| json!({ "coloring": c, "modulus": crate::invariants::sig12(m) })),
            "dim_bound": crate::invariants::sig12(crate::invariants::certify::dim_bound(r, gen, bnd)),
        }));
    }
    Ok((out, code))
}

fn pipeline_tail<S: Scalar>(
    g: &GlobalArgs,
    l: &ClosedBraidLink,
    levels: &[u32],
    f: &FiberData,
    eval: &EvalArgs,
) -> Result<(Value, Vec<Value>, i32)> {
    let opts = options::<S>(g, Some(eval));
    let series = growth_series::<S>(l, levels, None, &opts)?;
    let growth = json!(series
        .entries
        .iter()
        .map(|e| json!({ "r": e.r, "tv": crate::invariants::sig12(e.tv), "y": e.y.map(crate::invariants::sig12) }))
        .collect::<Vec<_>>());
    let admissible = crate::invariants::check_admissible(f.genus, f.boundary).is_ok();
    if !admissible {
        return Ok((growth, Vec::new(), 0));
    }
    let (certs, code) = certify_cmd::<S>(g, l, levels, f.genus, f.boundary, eval)?;
    Ok((growth, certs, code))
}

fn jones_cmd<S: Scalar + ExactForm>(
    g: &GlobalArgs,
    l: &ClosedBraidLink,
    coloring: &[u32],
    r: i64,
    normalized: bool,
    eval: &EvalArgs,
) -> Result<NumberRepr> {
    let root = RootData::<S>::new(r)?;
    for &c in coloring {
        root.check_color(c)?;
    }
    let opts = options::<S>(g, Some(eval));
    let mut v = colored_bracket_auto(l, coloring, &root, &opts.engine, opts.use_fast_path)?;
    if normalized {
        let u = root.unknot(coloring.first().copied().unwrap_or(0));
        v = v.mul_ref(&u.inv()?);
    }
    Ok(NumberRepr::from_scalar(&v))
}
