use crate::CliError;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use starcodes::bounds::{
    ddual_product, dim_product, ecp, filtration, fundamental_report, kashyap_pair, regularity_bounds, roos, singleton_product, weight_bounds,
    weight_ordered_flag, BoundReport,
};
use starcodes::code::parse_codes;
use starcodes::concat::{build_symbol_map, verify_power_bound};
use starcodes::families::FamilySpec;
use starcodes::lattice::{is_lattice, lattice_invariants, CodeChain, LiftKind, Lifting};
use starcodes::metrics::{ddual, dmin, generalized_weights, weight_distribution};
use starcodes::multilinpoly::{necklace_representative, universal_map_check, NeckTuple, OrbitTable, RepRule};
use starcodes::symtensor::{frobenius_twisted_product, mu_nrm, mu_sym, mu_tri, mult_tensor, product_form, trace_form, waring_g, SymMultiForm};
use starcodes::{Error, LinearCode};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "starcodes", version, about = "Schur products of linear codes and related computations")]
pub struct Cli {
    /// Output format; csv is only available for sequence outputs.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for `random` families that do not carry their own.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Codes from files and family strings, files first.
#[derive(Args, Debug, Clone)]
pub struct CodeArgs {
    /// Code file (repeatable).
    #[arg(long = "in", value_name = "PATH")]
    pub inputs: Vec<PathBuf>,
    /// Family string such as `rs:q=5,n=5,k=3` (repeatable).
    #[arg(long, value_name = "SPEC")]
    pub family: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Schur product of all given codes.
    Product(CodeArgs),
    /// The t-th Schur power.
    Power {
        #[command(flatten)]
        codes: CodeArgs,
        #[arg(long)]
        t: usize,
    },
    /// Dimension, distance and n_i sequences for t = 0..=tmax.
    Seq {
        #[command(flatten)]
        codes: CodeArgs,
        #[arg(long, default_value_t = 4)]
        tmax: usize,
    },
    /// Castelnuovo-Mumford regularity and the stable structure.
    Regularity(CodeArgs),
    /// Finest decomposition into codes with disjoint supports.
    Decompose(CodeArgs),
    /// Repeated-column classes and slice generators.
    Slices(CodeArgs),
    /// Stabilizing algebra of a code.
    Algebra(CodeArgs),
    /// Minimum distance, weight distribution and generalized weights.
    Weights(CodeArgs),
    /// A product bound, also spelled `bounds:<name>`.
    Bounds {
        #[arg(value_enum)]
        name: BoundName,
        #[command(flatten)]
        codes: CodeArgs,
        /// Error budget for `ecp`.
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
    /// Codewords with a weight-one product when k1 + k2 > n.
    Kashyap(CodeArgs),
    /// Symmetric decomposition of a form on GF(q^k) over GF(q).
    Symalg {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, value_enum, default_value_t = FormKind::Product)]
        form: FormKind,
    },
    /// Multiplication complexity of GF(q^k) over GF(q).
    Mu {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Variant::Tri)]
        variant: Variant,
    },
    /// Waring number g(t, q).
    Waring {
        #[arg(long, default_value_t = 3)]
        t: u64,
        #[arg(long)]
        q: u64,
    },
    /// Shift a nonincreasing tuple, or find its necklace representative.
    Necklace {
        #[arg(long)]
        r: usize,
        /// Comma-separated nonincreasing entries.
        #[arg(long)]
        entries: String,
        /// Apply this shift instead of searching for the representative.
        #[arg(long)]
        shift: Option<usize>,
    },
    /// Orbits of tuples under the shift action.
    Orbits {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Rule::LexMin)]
        rule: Rule,
    },
    /// Checks that the universal symmetric map is bijective.
    UniversalCheck {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
    },
    /// Checks the concatenated power distance bound for an outer code over GF(q^r).
    ConcatVerify {
        #[command(flatten)]
        codes: CodeArgs,
        /// Order of the inner field.
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: usize,
    },
    /// Carry criterion for a Construction D chain.
    LatticeCheck(ChainArgs),
    /// Covolume and minimum norm of a Construction D lattice.
    LatticeInvariants(ChainArgs),
    /// Largest dimension of a length-n code whose t-th power has distance at least d.
    Fundamental {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
}

#[derive(Args, Debug)]
pub struct ChainArgs {
    /// Chain file: code blocks C_0 ⊂ … ⊂ C_{a-1}, the full space is appended if missing.
    #[arg(long)]
    pub chain: PathBuf,
    #[arg(long, value_enum, default_value_t = Lift::Teichmuller)]
    pub lift: Lift,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BoundName {
    Ddual,
    Dim,
    Regularity,
    Singleton,
    Weights,
    Filtration,
    Roos,
    Ecp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormKind {
    /// Bilinear multiplication (t is ignored).
    Mult,
    /// t-fold product.
    Product,
    /// Product with one Frobenius-twisted factor, summed over slots.
    Twisted,
    /// Trace of the t-fold product.
    Trace,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Variant {
    Sym,
    Tri,
    Nrm,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Rule {
    LexMin,
    MinDegree,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Lift {
    Naive,
    Teichmuller,
}

/// What a subcommand produced.
pub struct Outcome {
    pub command: &'static str,
    pub result: Value,
    /// `Some(false)` turns into exit code 1.
    pub verified: Option<bool>,
    /// Header and rows, for subcommands that produce a sequence table.
    pub table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    /// A code to print verbatim in text mode.
    pub code: Option<LinearCode>,
}

impl Outcome {
    fn new(command: &'static str, result: impl Serialize) -> Result<Self, CliError> {
        Ok(Outcome { command, result: serde_json::to_value(result)?, verified: None, table: None, code: None })
    }

    fn report(command: &'static str, r: &BoundReport) -> Result<Self, CliError> {
        let mut o = Self::new(command, r)?;
        o.verified = Some(r.holds);
        Ok(o)
    }

    fn code(command: &'static str, c: LinearCode) -> Result<Self, CliError> {
        let mut o = Self::new(command, &c)?;
        o.code = Some(c);
        Ok(o)
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn with_path(path: &PathBuf, e: Error) -> CliError {
    CliError::Parse { path: path.display().to_string(), source: e }
}

fn load_codes(args: &CodeArgs, seed: Option<u64>) -> Result<Vec<LinearCode>, CliError> {
    let mut out = Vec::new();
    for p in &args.inputs {
        out.extend(parse_codes(&read(p)?).map_err(|e| with_path(p, e))?);
    }
    for s in &args.family {
        let mut spec = FamilySpec::parse(s).map_err(|e| CliError::Usage(format!("--family {s}: {e}")))?;
        if spec.kind == "random" && !spec.params.contains_key("seed") {
            let seed = seed.ok_or_else(|| CliError::Usage(format!("--family {s}: random codes need seed=… or --seed")))?;
            spec.params.insert("seed".into(), seed.to_string());
        }
        out.push(spec.build().map_err(|e| CliError::Usage(format!("--family {s}: {e}")))?);
    }
    Ok(out)
}

fn exactly<const N: usize>(args: &CodeArgs, seed: Option<u64>) -> Result<[LinearCode; N], CliError> {
    let codes = load_codes(args, seed)?;
    let got = codes.len();
    codes.try_into().map_err(|_| CliError::Usage(format!("expected {N} code(s), got {got}")))
}

fn at_least(args: &CodeArgs, seed: Option<u64>, n: usize) -> Result<Vec<LinearCode>, CliError> {
    let codes = load_codes(args, seed)?;
    if codes.len() < n {
        return Err(CliError::Usage(format!("expected at least {n} code(s), got {}", codes.len())));
    }
    Ok(codes)
}

/// Turns a budget overrun into `null`.
fn soft<T: Serialize>(r: starcodes::Result<T>) -> Result<Value, CliError> {
    match r {
        Ok(v) => Ok(serde_json::to_value(v)?),
        Err(Error::TooLarge(_) | Error::ZeroCode) => Ok(Value::Null),
        Err(e) => Err(e.into()),
    }
}

fn load_chain(args: &ChainArgs) -> Result<(CodeChain, Lifting), CliError> {
    let chain = CodeChain::from_text(&read(&args.chain)?).map_err(|e| with_path(&args.chain, e))?;
    let kind = match args.lift {
        Lift::Naive => LiftKind::Naive,
        Lift::Teichmuller => LiftKind::Teichmuller,
    };
    let lift = Lifting::new(chain.field().p(), chain.depth(), kind)?;
    Ok((chain, lift))
}

fn parse_entries(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("bad tuple entry '{x}'"))))
        .collect()
}

fn inner_degree(big: u64, q: u64) -> Result<u32, CliError> {
    let mut r = 0;
    let mut acc = 1u64;
    while acc < big {
        acc = acc.saturating_mul(q);
        r += 1;
    }
    if acc != big || q < 2 {
        return Err(CliError::Usage(format!("outer field order {big} is not a power of q = {q}")));
    }
    Ok(r)
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let seed = cli.seed;
    match &cli.command {
        Command::Product(a) => Outcome::code("product", LinearCode::star_all(&at_least(a, seed, 1)?)?),
        Command::Power { codes, t } => {
            let [c] = exactly(codes, seed)?;
            Outcome::code("power", c.power(*t))
        }
        Command::Seq { codes, tmax } => {
            let [c] = exactly(codes, seed)?;
            let dims = c.dim_sequence(*tmax);
            let dists = c.powers(*tmax).iter().map(|p| soft(dmin(p))).collect::<Result<Vec<_>, _>>()?;
            let n_i = soft(c.n_i_sequence(*tmax))?;
            let rows = (0..=*tmax)
                .map(|t| {
                    let cell = |v: &Value| if v.is_null() { String::new() } else { v.to_string() };
                    vec![t.to_string(), dims[t].to_string(), cell(&dists[t]), cell(n_i.get(t).unwrap_or(&Value::Null))]
                })
                .collect();
            let mut o = Outcome::new("seq", json!({"dims": dims, "dmin": dists, "n_i": n_i}))?;
            o.table = Some((vec!["t", "dim", "dmin", "n_i"], rows));
            Ok(o)
        }
        Command::Regularity(a) => {
            let [c] = exactly(a, seed)?;
            let r = c.regularity()?;
            let stable = soft(c.stable_structure())?;
            Outcome::new("regularity", json!({"regularity": r, "dims": c.dim_sequence(r + 1), "stable": stable}))
        }
        Command::Decompose(a) => {
            let [c] = exactly(a, seed)?;
            let (part, comps) = c.decompose()?;
            Outcome::new("decompose", json!({"partition": part, "components": comps, "indecomposable": part.len() <= 1}))
        }
        Command::Slices(a) => {
            let [c] = exactly(a, seed)?;
            Outcome::new("slices", json!({"classes": c.repeated_columns(), "slices": c.slices(None)?}))
        }
        Command::Algebra(a) => {
            let [c] = exactly(a, seed)?;
            let (ext, proper) = c.stabilizing_algebra();
            Outcome::new("algebra", json!({"extended": ext, "algebra": proper}))
        }
        Command::Weights(a) => {
            let [c] = exactly(a, seed)?;
            Outcome::new(
                "weights",
                json!({
                    "dmin": soft(dmin(&c))?,
                    "ddual": soft(ddual(&c))?,
                    "distribution": soft(weight_distribution(&c))?,
                    "generalized": soft(generalized_weights(&c))?,
                }),
            )
        }
        Command::Bounds { name, codes, t } => {
            let r = match name {
                BoundName::Ddual => {
                    let [a, b] = exactly(codes, seed)?;
                    ddual_product(&a, &b)?
                }
                BoundName::Dim => {
                    let [a, b] = exactly(codes, seed)?;
                    dim_product(&a, &b)?
                }
                BoundName::Regularity => {
                    let [c] = exactly(codes, seed)?;
                    regularity_bounds(&c)?
                }
                BoundName::Singleton => singleton_product(&at_least(codes, seed, 1)?)?,
                BoundName::Weights => {
                    let [a, b] = exactly(codes, seed)?;
                    weight_bounds(&a, &b)?
                }
                BoundName::Filtration => {
                    let [a, b] = exactly(codes, seed)?;
                    filtration(&a, &b, &weight_ordered_flag(&a))?
                }
                BoundName::Roos | BoundName::Ecp => {
                    let mut cs = at_least(codes, seed, 2)?;
                    if cs.len() == 2 {
                        cs.push(cs[0].star(&cs[1])?.dual());
                    }
                    if cs.len() != 3 {
                        return Err(CliError::Usage(format!("expected 2 or 3 codes, got {}", cs.len())));
                    }
                    match name {
                        BoundName::Roos => roos(&cs[0], &cs[1], &cs[2])?,
                        _ => ecp(&cs[0], &cs[1], &cs[2], *t)?,
                    }
                }
            };
            Outcome::report("bounds", &r)
        }
        Command::Kashyap(a) => {
            let [c1, c2] = exactly(a, seed)?;
            Outcome::new("kashyap", kashyap_pair(&c1, &c2)?)
        }
        Command::Symalg { q, k, t, form } => {
            let f: SymMultiForm = match form {
                FormKind::Mult => mult_tensor(*q, *k)?,
                FormKind::Product => product_form(*q, *k, *t)?,
                FormKind::Twisted => frobenius_twisted_product(*q, *k, *t)?,
                FormKind::Trace => trace_form(*q, *k, *t)?,
            };
            let check = f.frobenius_symmetry();
            let alg = f.symmetric_algorithm()?;
            let valid = alg.as_ref().map(|a| a.computes(&f));
            let mut o = Outcome::new("symalg", json!({"frobenius": check, "algorithm": alg, "valid": valid}))?;
            o.verified = Some(valid.is_some() == check.symmetric && valid != Some(false));
            Ok(o)
        }
        Command::Mu { q, k, variant } => {
            let v = match variant {
                Variant::Sym => mu_sym(*q, *k)?,
                Variant::Tri => mu_tri(*q, *k)?,
                Variant::Nrm => mu_nrm(*q, *k)?,
            };
            Outcome::new("mu", json!({"q": q, "k": k, "variant": format!("{variant:?}").to_lowercase(), "value": v}))
        }
        Command::Waring { t, q } => Outcome::new("waring", json!({"t": t, "q": q, "value": waring_g(*t, *q)?})),
        Command::Necklace { r, entries, shift } => {
            let mut e = parse_entries(entries)?;
            e.sort_unstable_by(|a, b| b.cmp(a));
            let i = NeckTuple::new(*r, e)?;
            let bound = NeckTuple::equidistributed(*r, i.t());
            match shift {
                Some(j) => Outcome::new("necklace", json!({"tuple": i, "shift": j, "result": i.boxplus(*j)})),
                None => {
                    let (j, rep) = necklace_representative(&i).ok_or_else(|| Error::Precondition("no shift reaches the bound".into()))?;
                    Outcome::new("necklace", json!({"tuple": i, "bound": bound, "shift": j, "result": rep}))
                }
            }
        }
        Command::Orbits { q, r, t, rule } => {
            let rule = match rule {
                Rule::LexMin => RepRule::LexMin,
                Rule::MinDegree => RepRule::MinDegree,
            };
            let table = OrbitTable::new(*q, *r, *t, rule)?;
            let max = table.max_degree();
            Outcome::new("orbits", json!({"table": table, "max_degree": max}))
        }
        Command::UniversalCheck { q, r, t } => {
            let rep = universal_map_check(*q, *r, *t)?;
            let ok = rep.bijective;
            let mut o = Outcome::new("universal-check", rep)?;
            o.verified = Some(ok);
            Ok(o)
        }
        Command::ConcatVerify { codes, q, t } => {
            let [c] = exactly(codes, seed)?;
            let r = inner_degree(c.field().q() as u64, *q)?;
            let sm = build_symbol_map(*q, r, *t)?;
            Outcome::report("concat-verify", &verify_power_bound(&c, &sm, *t)?)
        }
        Command::LatticeCheck(a) => {
            let (chain, lift) = load_chain(a)?;
            Outcome::report("lattice-check", &is_lattice(&chain, &lift)?)
        }
        Command::LatticeInvariants(a) => {
            let (chain, lift) = load_chain(a)?;
            let verdict = is_lattice(&chain, &lift)?;
            if !verdict.holds {
                let mut o = Outcome::new("lattice-invariants", json!({"lattice": false, "report": verdict}))?;
                o.verified = Some(false);
                return Ok(o);
            }
            Outcome::new("lattice-invariants", json!({"lattice": true, "invariants": lattice_invariants(&chain, &lift)?}))
        }
        Command::Fundamental { q, n, d, t } => Outcome::report("fundamental", &fundamental_report(*q, *n, *d, *t)?),
    }
}
