use domatic_core::oracle::{
    brute_force_separator, dense_lp_solve, exact_fractional_cds_packing, exact_min_cost_set, LpKind, OracleBudget,
    SetKind,
};
use domatic_core::packing::pack_capacitated_with;
use domatic_core::pipeline::solve_ds_lp;
use domatic_core::primal_dual::certify;
use domatic_core::rational::{self, Rational};
use domatic_core::{
    min_capacity_separator, pack_complete, primal_dual_ds, round_cds, solve_cds_lp, verify_packing, DecomposeOptions,
    Error, Graph, Packing, PackingReport, VertexSet,
};
use num_traits::Zero;
use serde::Serialize;

use crate::generate::{generate, Family, WeightSpec};
use crate::{CliError, Command, ExactWhat, FamilyKind, GenerateArgs, Instance};

type Failure = (CliError, String);

fn s(r: &Rational) -> String {
    rational::format(r)
}

fn strings(rs: impl IntoIterator<Item = Rational>) -> Vec<String> {
    rs.into_iter().map(|r| s(&r)).collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

fn fail<T>(e: impl Into<CliError>) -> Result<T, Failure> {
    Err((e.into(), String::new()))
}

fn load(path: &str, stdin: impl FnOnce() -> std::io::Result<String>) -> Result<Instance, Failure> {
    let text = if path == "-" {
        stdin()
    } else {
        std::fs::read_to_string(path)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => return fail(CliError::Input(format!("cannot read {path}: {e}"))),
    };
    Instance::parse(&text).or_else(fail)
}

fn ratio(num: &Rational, den: &Rational) -> Option<String> {
    (!den.is_zero()).then(|| s(&(num / den)))
}

fn parse_rational(flag: &str, value: &str) -> Result<Rational, Failure> {
    match rational::parse(value) {
        Some(r) => Ok(r),
        None => fail(CliError::Input(format!(
            "{flag}: expected an integer or p/q, got `{value}`"
        ))),
    }
}

fn complete_guard(g: &Graph, what: &str) -> Result<(), Failure> {
    if g.is_complete() {
        return fail(CliError::Structural(format!(
            "graph is complete: it has no node separator, so {what} is undefined"
        )));
    }
    Ok(())
}

pub(crate) fn execute(cmd: &Command, stdin: impl FnOnce() -> std::io::Result<String>) -> Result<String, Failure> {
    match cmd {
        Command::Separator(input) => separator(&load(&input.file, stdin)?),
        Command::Pack {
            input,
            rho_cap,
            max_rounds,
            verify,
            complete_singletons,
        } => {
            let opts = DecomposeOptions {
                max_rounds: *max_rounds,
                rho_cap: rho_cap.as_deref().map(|r| parse_rational("--rho-cap", r)).transpose()?,
            };
            pack(&load(&input.file, stdin)?, &opts, *verify, *complete_singletons)
        }
        Command::Ds {
            input,
            check_certificates,
            c_prime,
        } => {
            let c = parse_rational("--c-prime", c_prime)?;
            ds(&load(&input.file, stdin)?, *check_certificates, &c)
        }
        Command::Cds(input) => cds(&load(&input.file, stdin)?),
        Command::Exact {
            input,
            what,
            max_vertices,
        } => exact(&load(&input.file, stdin)?, *what, budget(*max_vertices)?),
        Command::Gap { input, max_vertices } => gap(&load(&input.file, stdin)?, budget(*max_vertices)?),
        Command::Generate(args) => generate_cmd(args),
    }
}

fn budget(max_vertices: usize) -> Result<OracleBudget, Failure> {
    OracleBudget::new(max_vertices, 1u64 << max_vertices.min(63)).or_else(fail)
}

#[derive(Serialize)]
struct SeparatorOut {
    k: String,
    separator: VertexSet,
    sides: [VertexSet; 2],
}

fn separator(inst: &Instance) -> Result<String, Failure> {
    inst.graph.require_connected().or_else(fail)?;
    complete_guard(&inst.graph, "k")?;
    let cert = min_capacity_separator(&inst.graph, &inst.capacity).or_else(fail)?;
    Ok(to_json(&SeparatorOut {
        k: s(&cert.capacity),
        separator: cert.separator,
        sides: [cert.side_a, cert.side_b],
    }))
}

#[derive(Serialize)]
struct PackingOut {
    sets: Vec<VertexSet>,
    weights: Vec<String>,
    k: Option<String>,
    rho: Option<String>,
    size: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<PackingReport>,
}

fn packing_out(p: &Packing, k: Option<&Rational>, rho: Option<&Rational>, report: Option<PackingReport>) -> PackingOut {
    PackingOut {
        sets: p.entries.iter().map(|(set, _)| set.clone()).collect(),
        weights: strings(p.entries.iter().map(|(_, w)| w.clone())),
        k: k.map(s),
        rho: rho.map(s),
        size: s(&p.size()),
        verification: report,
    }
}

fn pack(inst: &Instance, opts: &DecomposeOptions, verify: bool, complete_singletons: bool) -> Result<String, Failure> {
    let g = &inst.graph;
    let report = |p: &Packing| verify.then(|| verify_packing(g, &inst.capacity, p));
    if g.is_complete() && complete_singletons {
        let p = pack_complete(g, &inst.capacity).or_else(fail)?;
        return Ok(to_json(&packing_out(&p, None, None, report(&p))));
    }
    let out = match pack_capacitated_with(g, &inst.capacity, opts) {
        Ok(out) => out,
        Err(Error::CompleteGraph) => {
            return fail(CliError::Structural(
                "graph is complete: k is undefined; pass --complete-singletons to pack each vertex alone".into(),
            ))
        }
        Err(e) => return fail(e),
    };
    let body = packing_out(&out.packing, Some(&out.k), Some(&out.rho), report(&out.packing));
    let text = to_json(&body);
    match body.verification {
        Some(r) if !r.passes => Err((CliError::Structural("packing failed verification".into()), text)),
        _ => Ok(text),
    }
}

#[derive(Serialize)]
struct Certificates {
    dual_feasible: bool,
    tight: bool,
    rearrangement: bool,
    iterations_within_n: bool,
    witness: bool,
    gamma_bound: bool,
    worst_ratio: String,
    c_prime: String,
    lp_value: String,
    /// cost / LP value.
    ratio: Option<String>,
    /// cost ≤ (1 + 4c')·LP.
    within_bound: bool,
}

#[derive(Serialize)]
struct DsOut {
    dominating_set: VertexSet,
    cost: String,
    dual: Vec<String>,
    dual_value: String,
    trace: domatic_core::PdTrace,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificates: Option<Certificates>,
}

fn ds(inst: &Instance, check: bool, c_prime: &Rational) -> Result<String, Failure> {
    let g = &inst.graph;
    let run = primal_dual_ds(g, &inst.cost).or_else(fail)?;
    let cost = inst.cost.sum_over(&run.dominating_set);
    let certificates = if check {
        let rep = certify(g, &inst.cost, &run, c_prime).or_else(fail)?;
        let lp = solve_ds_lp(g, &inst.cost).or_else(fail)?.value;
        let factor = Rational::from_integer(1.into()) + Rational::from_integer(4.into()) * c_prime;
        Some(Certificates {
            within_bound: cost <= &factor * &lp,
            ratio: ratio(&cost, &lp),
            lp_value: s(&lp),
            dual_feasible: rep.dual_feasible,
            tight: rep.tight,
            rearrangement: rep.rearrangement,
            iterations_within_n: rep.iterations_within_n,
            witness: rep.witness,
            gamma_bound: rep.gamma_bound,
            worst_ratio: s(&rep.worst_ratio),
            c_prime: s(c_prime),
        })
    } else {
        None
    };
    let body = DsOut {
        cost: s(&cost),
        dual: strings(run.dual.y.iter().cloned()),
        dual_value: s(&run.dual.value()),
        dominating_set: run.dominating_set,
        trace: run.trace,
        certificates,
    };
    let text = to_json(&body);
    if let Some(c) = &body.certificates {
        let failed: Vec<&str> = [
            ("dual_feasible", c.dual_feasible),
            ("tight", c.tight),
            ("rearrangement", c.rearrangement),
            ("iterations_within_n", c.iterations_within_n),
            ("witness", c.witness),
            ("gamma_bound", c.gamma_bound),
            ("within_bound", c.within_bound),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect();
        if !failed.is_empty() {
            return Err((
                CliError::Structural(format!("certificate check failed: {}", failed.join(", "))),
                text,
            ));
        }
    }
    Ok(text)
}

#[derive(Serialize)]
struct CdsOut {
    lp_value: String,
    x: Vec<String>,
    cds: VertexSet,
    ds_part: VertexSet,
    connector_part: VertexSet,
    cost: String,
    certified_r: Option<String>,
}

fn cds(inst: &Instance) -> Result<String, Failure> {
    let g = &inst.graph;
    let lp = solve_cds_lp(g, &inst.cost).or_else(fail)?;
    let r = round_cds(g, &inst.cost, &lp.x).or_else(fail)?;
    Ok(to_json(&CdsOut {
        lp_value: s(&lp.value),
        x: strings(lp.x.iter().cloned()),
        cds: r.cds,
        ds_part: r.ds_part,
        connector_part: r.connector_part,
        cost: s(&r.cost),
        certified_r: r.certified_r.as_ref().map(s),
    }))
}

#[derive(Serialize)]
struct ExactOut {
    what: &'static str,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    set: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    packing: Option<PackingOut>,
}

fn exact(inst: &Instance, what: ExactWhat, budget: OracleBudget) -> Result<String, Failure> {
    let g = &inst.graph;
    let plain = |name, value: Rational, set| ExactOut {
        what: name,
        value: s(&value),
        set,
        x: None,
        packing: None,
    };
    let out = match what {
        ExactWhat::Ds | ExactWhat::Cds => {
            let (name, kind) = if what == ExactWhat::Ds {
                ("ds", SetKind::Dominating)
            } else {
                inst.graph.require_connected().or_else(fail)?;
                ("cds", SetKind::ConnectedDominating)
            };
            let (set, value) = exact_min_cost_set(g, &inst.cost, kind, &budget).or_else(fail)?;
            plain(name, value, Some(set))
        }
        ExactWhat::DsLp | ExactWhat::CdsLp => {
            let (name, kind) = if what == ExactWhat::DsLp {
                ("ds-lp", LpKind::MinDs)
            } else {
                inst.graph.require_connected().or_else(fail)?;
                ("cds-lp", LpKind::MinCds)
            };
            let lp = dense_lp_solve(g, &kind, &inst.cost, &budget).or_else(fail)?;
            ExactOut {
                x: Some(strings(lp.x.iter().cloned())),
                ..plain(name, lp.value, None)
            }
        }
        ExactWhat::Packing => {
            inst.graph.require_connected().or_else(fail)?;
            let (value, p) = exact_fractional_cds_packing(g, &inst.capacity, &budget).or_else(fail)?;
            ExactOut {
                packing: Some(packing_out(&p, None, None, None)),
                ..plain("packing", value, None)
            }
        }
        ExactWhat::Separator => {
            inst.graph.require_connected().or_else(fail)?;
            complete_guard(g, "k")?;
            match brute_force_separator(g, &inst.capacity, &budget).or_else(fail)? {
                Some((set, k)) => plain("separator", k, Some(set)),
                None => return fail(CliError::Structural("no node separator exists".into())),
            }
        }
    };
    Ok(to_json(&out))
}

#[derive(Serialize)]
struct GapEntry {
    integral: String,
    lp: String,
    gap: Option<String>,
}

#[derive(Serialize)]
struct GapOut {
    ds: GapEntry,
    cds: GapEntry,
}

fn gap(inst: &Instance, budget: OracleBudget) -> Result<String, Failure> {
    let g = &inst.graph;
    g.require_connected().or_else(fail)?;
    let entry = |kind: SetKind, lp: LpKind| -> Result<GapEntry, Failure> {
        let (_, integral) = exact_min_cost_set(g, &inst.cost, kind, &budget).or_else(fail)?;
        let lp = dense_lp_solve(g, &lp, &inst.cost, &budget).or_else(fail)?.value;
        Ok(GapEntry {
            gap: ratio(&integral, &lp),
            integral: s(&integral),
            lp: s(&lp),
        })
    };
    Ok(to_json(&GapOut {
        ds: entry(SetKind::Dominating, LpKind::MinDs)?,
        cds: entry(SetKind::ConnectedDominating, LpKind::MinCds)?,
    }))
}

fn weight_spec(flag: &str, value: &str) -> Result<WeightSpec, Failure> {
    if let Some((lo, hi)) = value.split_once(':') {
        match (lo.parse::<i64>(), hi.parse::<i64>()) {
            (Ok(lo), Ok(hi)) if 0 <= lo && lo <= hi => Ok(WeightSpec::Range(lo, hi)),
            _ => fail(CliError::Input(format!(
                "{flag}: expected lo:hi with 0 <= lo <= hi, got `{value}`"
            ))),
        }
    } else {
        let r = parse_rational(flag, value)?;
        if r < Rational::zero() {
            return fail(CliError::Input(format!("{flag}: negative value `{value}`")));
        }
        Ok(WeightSpec::Constant(r))
    }
}

fn generate_cmd(args: &GenerateArgs) -> Result<String, Failure> {
    let n = args.size;
    let cols = || match args.cols {
        Some(c) => Ok(c),
        None => fail(CliError::Input("grids need both rows and cols".into())),
    };
    let family = match args.family {
        FamilyKind::Path => Family::Path(n),
        FamilyKind::Cycle if n < 3 => return fail(CliError::Input("a cycle needs at least 3 vertices".into())),
        FamilyKind::Cycle => Family::Cycle(n),
        FamilyKind::Star => Family::Star(n),
        FamilyKind::Complete => Family::Complete(n),
        FamilyKind::Grid => Family::Grid(n, cols()?),
        FamilyKind::GridSubgraph => {
            let keep = parse_rational("--keep", &args.keep)?;
            let (num, den) = (
                keep.numer().to_string().parse::<u32>(),
                keep.denom().to_string().parse::<u32>(),
            );
            match (num, den) {
                (Ok(keep_num), Ok(keep_den)) if keep_num <= keep_den => Family::GridSubgraph {
                    rows: n,
                    cols: cols()?,
                    keep_num,
                    keep_den,
                },
                _ => {
                    return fail(CliError::Input(format!(
                        "--keep: expected a probability p/q, got `{}`",
                        args.keep
                    )))
                }
            }
        }
    };
    let capacity = weight_spec("--capacity", &args.capacity)?;
    let cost = weight_spec("--cost", &args.cost)?;
    Ok(generate(&family, &capacity, &cost, args.seed).to_text())
}
