use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use godel_t::codec::{encode_expr, numeral_of_code, DEFAULT_NUMERAL_GUARD};
use godel_t::enumerator::{apply_enumerator, build_bundle, check_lemma_a};
use godel_t::meta_nf::enumerate_pure_closed_nf;
use godel_t::normalize::{eval_numeral, Acceleration, Budget, Normalizer, Stats};
use godel_t::random::{recursor_axioms, TermGen};
use godel_t::reducibility::{
    build_n, decode_v, encode_u, identity_witness, tree_numeral, tree_of_nf, tree_type,
    ReducibilityWitness,
};
use godel_t::stdlib::{lookup, standard_prelude};
use godel_t::{infer_type, parse_term_with, parse_type, Context, Nat, Term, Type};

mod report;

use report::{Failure, Report};

#[derive(Parser)]
#[command(name = "godel-t", version, about = "Typechecker, normalizer and enumerators for Gödel's theory T")]
struct Cli {
    /// Emit one JSON object per result.
    #[arg(long, global = true)]
    json: bool,
    /// Step budget for each normalization.
    #[arg(long, global = true, value_name = "N")]
    budget_steps: Option<u64>,
    /// Node budget for each normal form.
    #[arg(long, global = true, value_name = "N")]
    budget_nodes: Option<u64>,
    /// Native arithmetic used by the evaluator.
    #[arg(long, global = true, value_enum, default_value_t = Accel::Full)]
    accel: Accel,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Accel {
    None,
    Arithmetic,
    Full,
}

/// A term given inline with `-e` or read from a file.
#[derive(Args, Clone)]
struct Source {
    /// Term in the surface syntax.
    #[arg(short = 'e', long = "expr", value_name = "EXPR")]
    expr: Option<String>,
    /// File containing a term.
    #[arg(value_name = "FILE", conflicts_with = "expr")]
    file: Option<PathBuf>,
    /// A standard combinator by name, such as Add or P1.
    #[arg(long, value_name = "NAME", conflicts_with_all = ["expr", "file"])]
    combinator: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Typecheck a closed term and print its type.
    Check(Source),
    /// Print the βηT-normal form of a closed term.
    Normalize(Source),
    /// Decide provable equality of two closed terms.
    Eq {
        /// A term; give exactly two.
        #[arg(short = 'e', long = "expr", value_name = "EXPR")]
        exprs: Vec<String>,
        /// Files holding the two terms.
        #[arg(value_name = "FILE", num_args = 0..=2, conflicts_with = "exprs")]
        files: Vec<PathBuf>,
    },
    /// Gödel code of a pure closed normal form.
    Encode {
        #[command(flatten)]
        source: Source,
        /// Expected type; inferred when omitted.
        #[arg(long = "type", value_name = "T")]
        ty: Option<String>,
    },
    /// List pure closed normal forms of a type with their codes.
    EnumNf {
        #[arg(long = "type", value_name = "T")]
        ty: String,
        #[arg(long, default_value_t = 9)]
        max_size: usize,
    },
    /// Construct the enumerator of a type.
    BuildEnumerator {
        #[arg(long = "type", value_name = "T")]
        ty: String,
        /// Write the enumerator term to this file.
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
    },
    /// Check that the enumerator inverts the code on the census.
    Roundtrip {
        #[arg(long = "type", value_name = "T")]
        ty: String,
        #[arg(long, default_value_t = 2000)]
        max_code: u64,
        #[arg(long, default_value_t = 12)]
        max_size: usize,
    },
    /// Print the binary tree of a tree-typed normal form and its numeral.
    TreeCode(Source),
    /// Build the U-encoding of F : σ → τ, optionally applied to a code.
    EncodeU {
        #[command(flatten)]
        source: Source,
        #[arg(long = "from", value_name = "SIGMA")]
        sigma: String,
        #[arg(long = "to", value_name = "TAU")]
        tau: String,
        /// Witness term for τ; the identity at the tree type by default.
        #[arg(long, value_name = "FILE")]
        witness: Option<PathBuf>,
        #[arg(long, value_name = "N")]
        code: Option<Nat>,
    },
    /// Build the V-decoding of G : N → N, optionally applied to a term.
    DecodeV {
        #[command(flatten)]
        source: Source,
        #[arg(long = "from", value_name = "SIGMA")]
        sigma: String,
        #[arg(long = "to", value_name = "TAU")]
        tau: String,
        /// Witness term for σ; the identity at the tree type by default.
        #[arg(long, value_name = "FILE")]
        witness: Option<PathBuf>,
        /// Argument of type σ.
        #[arg(long, value_name = "EXPR")]
        input: Option<String>,
    },
    /// Apply N_τ from a witness to a term.
    Reduce {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "FILE")]
        witness: Option<PathBuf>,
    },
    /// Check A (i+j) j = A i 0 for all i, j up to a bound.
    LemmaA {
        #[arg(long = "type", value_name = "T")]
        ty: String,
        #[arg(long, default_value_t = 4)]
        max: u64,
    },
    /// Check both recursor axioms on random instances.
    Axioms {
        #[arg(long = "type", value_name = "T", default_value = "N")]
        ty: String,
        #[arg(long, default_value_t = 25)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Ctx {
    normalizer: Normalizer,
    budget_set: bool,
}

impl Ctx {
    /// The normalizer for enumerator runs: the user's budget, or the larger default.
    fn enumerator(&self) -> Normalizer {
        if self.budget_set {
            self.normalizer
        } else {
            Normalizer { budget: Budget::enumerator(), ..self.normalizer }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget::new(
        cli.budget_steps.unwrap_or(Budget::DEFAULT_STEPS).max(1),
        cli.budget_nodes.unwrap_or(Budget::DEFAULT_NODES).max(1),
    );
    let acceleration = match cli.accel {
        Accel::None => Acceleration::None,
        Accel::Arithmetic => Acceleration::Arithmetic,
        Accel::Full => Acceleration::Full,
    };
    let ctx = Ctx {
        normalizer: Normalizer::new(budget).with_acceleration(acceleration),
        budget_set: cli.budget_steps.is_some() || cli.budget_nodes.is_some(),
    };
    let name = command_name(&cli.command);
    let start = Instant::now();
    let result = run(&ctx, cli.command);
    let report = match result {
        Ok(mut r) => {
            r.wall_ms = start.elapsed().as_secs_f64() * 1e3;
            r
        }
        Err(f) => Report::error(f),
    };
    report.print(name, cli.json)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check(_) => "check",
        Command::Normalize(_) => "normalize",
        Command::Eq { .. } => "eq",
        Command::Encode { .. } => "encode",
        Command::EnumNf { .. } => "enum-nf",
        Command::BuildEnumerator { .. } => "build-enumerator",
        Command::Roundtrip { .. } => "roundtrip",
        Command::TreeCode(_) => "tree-code",
        Command::EncodeU { .. } => "encode-u",
        Command::DecodeV { .. } => "decode-v",
        Command::Reduce { .. } => "reduce",
        Command::LemmaA { .. } => "lemma-a",
        Command::Axioms { .. } => "axioms",
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))
}

fn parse(src: &str) -> Result<Term, Failure> {
    parse_term_with(standard_prelude(), &Context::new(), src).map_err(|e| Failure::new("parse", e.to_string()))
}

fn ty(src: &str) -> Result<Type, Failure> {
    parse_type(src).map_err(|e| Failure::new("parse", e.to_string()))
}

fn load(source: &Source) -> Result<Term, Failure> {
    if let Some(name) = &source.combinator {
        return lookup(name).map(|c| c.term).map_err(|e| Failure::new("stdlib", e.to_string()));
    }
    match (&source.expr, &source.file) {
        (Some(e), _) => parse(e),
        (None, Some(f)) => parse(&read_file(f)?),
        (None, None) => Err(Failure::usage("a term is required: pass -e EXPR, FILE or --combinator NAME")),
    }
}

fn type_of(t: &Term) -> Result<Type, Failure> {
    infer_type(&Context::new(), t).map_err(|e| Failure::new("type", e.to_string()))
}

fn witness(path: &Option<PathBuf>, tau: &Type) -> Result<ReducibilityWitness, Failure> {
    match path {
        None if *tau == tree_type() => Ok(identity_witness()),
        None => Err(Failure::usage(format!("a --witness is required for {tau}"))),
        Some(p) => {
            let m = parse(&read_file(p)?)?;
            ReducibilityWitness::new(tau.clone(), m).map_err(|e| Failure::new("witness", e.to_string()))
        }
    }
}

fn metrics(r: &mut Report, s: &Stats) {
    r.steps += s.steps;
    r.nodes = r.nodes.max(s.nodes);
}

fn run(ctx: &Ctx, command: Command) -> Result<Report, Failure> {
    let norm = &ctx.normalizer;
    let mut r = Report::default();
    match command {
        Command::Check(source) => {
            let t = load(&source)?;
            let found = type_of(&t)?;
            r.text(found.to_string());
            r.field("type", json!(found.to_string()));
        }
        Command::Normalize(source) => {
            let t = load(&source)?;
            let nf = norm.normalize(&t).map_err(Failure::normalize)?;
            metrics(&mut r, &nf.stats);
            r.text(nf.term.to_string());
            r.text_comment(format!("steps {}, jet steps {}, nodes {}", nf.stats.steps, nf.stats.jet_steps, nf.stats.nodes));
            r.field("term", json!(nf.term.to_string()));
            r.field("type", json!(nf.ty.to_string()));
        }
        Command::Eq { exprs, files } => {
            let terms: Vec<Term> = if !exprs.is_empty() {
                exprs.iter().map(|e| parse(e)).collect::<Result<_, _>>()?
            } else {
                files.iter().map(|f| parse(&read_file(f)?)).collect::<Result<_, _>>()?
            };
            let [a, b] = terms.as_slice() else {
                return Err(Failure::usage("eq needs exactly two terms"));
            };
            let na = norm.normalize(a).map_err(Failure::normalize)?;
            let nb = norm.normalize(b).map_err(Failure::normalize)?;
            if na.ty != nb.ty {
                return Err(Failure::new("type", format!("cannot compare {} with {}", na.ty, nb.ty)));
            }
            metrics(&mut r, &na.stats);
            metrics(&mut r, &nb.stats);
            let equal = na.term == nb.term;
            r.text(equal.to_string());
            r.field("equal", json!(equal));
        }
        Command::Encode { source, ty: expected } => {
            let t = load(&source)?;
            let found = type_of(&t)?;
            if let Some(e) = expected {
                let e = ty(&e)?;
                if e != found {
                    return Err(Failure::new("type", format!("term has type {found}, not {e}")));
                }
            }
            let e = encode_expr(&t, &found).map_err(|e| Failure::new("codec", e.to_string()))?;
            let code = e.value();
            r.text(code.to_string());
            r.text_comment(e.to_string());
            r.field("code", json!(code.to_string()));
            r.field("pairs", json!(e.to_string()));
            r.field("type", json!(found.to_string()));
        }
        Command::EnumNf { ty: t, max_size } => {
            let t = ty(&t)?;
            let mut rows = Vec::new();
            for a in enumerate_pure_closed_nf(&t, max_size) {
                let code = encode_expr(&a, &t).map_err(|e| Failure::new("codec", e.to_string()))?.value();
                r.text(format!("{}\t{}\t{a}", a.size(), code));
                rows.push(json!({"size": a.size(), "code": code.to_string(), "term": a.to_string()}));
            }
            r.field("type", json!(t.to_string()));
            r.field("terms", Value::Array(rows));
        }
        Command::BuildEnumerator { ty: t, emit } => {
            let t = ty(&t)?;
            let bundle = build_bundle(&t);
            if let Some(path) = &emit {
                std::fs::write(path, format!("{}\n", bundle.e))
                    .map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))?;
            }
            let mut table = Vec::new();
            for (i, j, case) in bundle.degeneracy_table() {
                r.text(format!("J[{j},{i}]\t{case}"));
                table.push(json!({"i": i, "j": j, "case": case.to_string()}));
            }
            r.text_comment(format!("{} subtypes, E has {} nodes", bundle.n(), bundle.e.size()));
            r.field("subtypes", json!(bundle.subtypes.iter().map(Type::to_string).collect::<Vec<_>>()));
            r.field("slots", Value::Array(table));
            r.field("enumerator_size", json!(bundle.e.size()));
        }
        Command::Roundtrip { ty: t, max_code, max_size } => {
            let t = ty(&t)?;
            let bundle = build_bundle(&t);
            let enorm = ctx.enumerator();
            let mut rows = Vec::new();
            let mut failed = 0;
            for a in enumerate_pure_closed_nf(&t, max_size) {
                let code = encode_expr(&a, &t).map_err(|e| Failure::new("codec", e.to_string()))?.value();
                if code > Nat::from(max_code) {
                    continue;
                }
                let (pass, steps, out) = match apply_enumerator(&bundle, &code, &enorm) {
                    Ok(nf) => {
                        metrics(&mut r, &nf.stats);
                        (nf.term == a, nf.stats.steps, nf.term.to_string())
                    }
                    Err(e) => (false, 0, format!("error: {e}")),
                };
                failed += usize::from(!pass);
                let verdict = if pass { "PASS" } else { "FAIL" };
                r.text(format!("{code}\t{a}\t{steps}\t{verdict}"));
                rows.push(json!({"code": code.to_string(), "term": a.to_string(), "result": out, "steps": steps, "pass": pass}));
            }
            r.field("type", json!(t.to_string()));
            r.field("rows", Value::Array(rows));
            if failed > 0 {
                return Err(r.into_failure("roundtrip", format!("{failed} round trips failed")));
            }
        }
        Command::TreeCode(source) => {
            let t = load(&source)?;
            let tree = tree_of_nf(&t).map_err(|e| Failure::new("tree", e.to_string()))?;
            let n = tree_numeral(&tree);
            r.text(format!("{tree}\t{n}"));
            r.field("tree", json!(tree.to_string()));
            r.field("numeral", json!(n.to_string()));
        }
        Command::EncodeU { source, sigma, tau, witness: w, code } => {
            let f = load(&source)?;
            let (sigma, tau) = (ty(&sigma)?, ty(&tau)?);
            let wit = witness(&w, &tau)?;
            let bundle = build_bundle(&sigma);
            let u = encode_u(&f, &sigma, &tau, &wit, &bundle).map_err(|e| Failure::new("type", e.to_string()))?;
            match code {
                Some(c) => {
                    let n = numeral_of_code(&c, DEFAULT_NUMERAL_GUARD).map_err(|e| Failure::new("codec", e.to_string()))?;
                    let nf = ctx.enumerator().normalize(&Term::app(u, n.term)).map_err(Failure::normalize)?;
                    metrics(&mut r, &nf.stats);
                    let v = eval_numeral(&nf).map_err(Failure::normalize)?;
                    r.text(v.to_string());
                    r.field("value", json!(v.to_string()));
                }
                None => {
                    r.text(u.to_string());
                    r.field("term", json!(u.to_string()));
                }
            }
        }
        Command::DecodeV { source, sigma, tau, witness: w, input } => {
            let g = load(&source)?;
            let (sigma, tau) = (ty(&sigma)?, ty(&tau)?);
            let wit = witness(&w, &sigma)?;
            let bundle = build_bundle(&tau);
            let v = decode_v(&g, &sigma, &tau, &wit, &bundle).map_err(|e| Failure::new("type", e.to_string()))?;
            match input {
                Some(src) => {
                    let a = parse(&src)?;
                    let nf = ctx.enumerator().normalize(&Term::app(v, a)).map_err(Failure::normalize)?;
                    metrics(&mut r, &nf.stats);
                    r.text(nf.term.to_string());
                    r.field("term", json!(nf.term.to_string()));
                }
                None => {
                    r.text(v.to_string());
                    r.field("term", json!(v.to_string()));
                }
            }
        }
        Command::Reduce { source, witness: w } => {
            let a = load(&source)?;
            let found = type_of(&a)?;
            let wit = witness(&w, &found)?;
            let nf = norm.normalize(&Term::app(build_n(&wit), a)).map_err(Failure::normalize)?;
            metrics(&mut r, &nf.stats);
            let v = eval_numeral(&nf).map_err(Failure::normalize)?;
            r.text(v.to_string());
            r.field("value", json!(v.to_string()));
        }
        Command::LemmaA { ty: t, max } => {
            let t = ty(&t)?;
            let bundle = build_bundle(&t);
            let enorm = ctx.enumerator();
            let mut rows = Vec::new();
            let mut failed = 0;
            for i in 0..=max {
                for j in 0..=max {
                    let ok = check_lemma_a(&bundle, i, j, &enorm).map_err(Failure::normalize)?;
                    failed += usize::from(!ok);
                    r.text(format!("{i}\t{j}\t{}", if ok { "PASS" } else { "FAIL" }));
                    rows.push(json!({"i": i, "j": j, "pass": ok}));
                }
            }
            r.field("rows", Value::Array(rows));
            if failed > 0 {
                return Err(r.into_failure("lemma", format!("{failed} equations failed")));
            }
        }
        Command::Axioms { ty: t, count, seed } => {
            let t = ty(&t)?;
            let mut gen = TermGen::new(seed);
            let mut rows = Vec::new();
            let mut failed = 0;
            for inst in recursor_axioms(&mut gen, &t, count) {
                let ok = norm.equal(&inst.lhs, &inst.rhs).map_err(Failure::normalize)?;
                failed += usize::from(!ok);
                let schema = format!("{:?}", inst.schema).to_lowercase();
                r.text(format!("{schema}\t{}\t{}", inst.lhs, if ok { "PASS" } else { "FAIL" }));
                rows.push(json!({"schema": schema, "lhs": inst.lhs.to_string(), "rhs": inst.rhs.to_string(), "pass": ok}));
            }
            r.field("seed", json!(seed));
            r.field("rows", Value::Array(rows));
            if failed > 0 {
                return Err(r.into_failure("axiom", format!("{failed} instances failed")));
            }
        }
    }
    Ok(r)
}
