//! Command-line front end: one verb per verification family, text or JSON
//! reports, deterministic output.
//!
//! Exit codes: 0 on success, 1 when a verification ran and failed (the
//! report then carries counterexamples), 2 on usage or parse errors.

use clap::{Parser, Subcommand, ValueEnum};
use qwitt::expr::{self, Expr};
use qwitt::pbw::{
    central_elements_check, graded_leading_term_check, power_commutation_check,
    strategy_agreement_sample, zero_divisor_sample, ReductionSystem, Strategy,
};
use qwitt::qarith::{gauss_binomial, q_factorial, q_integer, verify_q_pascal, ScalarField};
use qwitt::qdivided::{
    verify_skew_leibniz_divided, verify_skew_leibniz_laurent, DividedElement, LaurentPoly,
};
use qwitt::qlie::{
    bracket_table, is_q_central, q_centralizer, q_normalizer, verify_antisymmetry,
    verify_cocycle_recursion, verify_weighted_jacobi, virasoro_cocycle, AlgebraKind, BasisElement,
    GradedAlgebra,
};
use qwitt::qrep::{
    base_top_eigenvalues, deform_representation, graded_submodule_analysis, holomorph_compat_check,
    realize_module, realize_module_generic, standard_holomorph_pair, tensor_representation,
    verify_module_axiom, Matrix, ModuleRealization, TPoly, WeightParameter,
};
use qwitt::{Error, Result};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "qwitt",
    version,
    about = "Exact computer algebra for q-deformed Witt and Virasoro Lie theory"
)]
pub struct Cli {
    /// Coefficient field: rational functions in q, or a cyclotomic field.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Order of the root of unity (implies root mode).
    #[arg(long, global = true)]
    l: Option<u32>,
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Index window for sweeps over infinite algebras.
    #[arg(long, global = true, default_value_t = 8)]
    window: i64,
    /// Worker threads for verification sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for randomized spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Generic,
    Root,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgebraArg {
    WittQ,
    WittQ1,
    WittEps,
    VirasoroQ,
    HolomorphQ,
    HolomorphEps,
    Abelian,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LeibnizKind {
    Laurent,
    Divided,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Leftmost,
    Rightmost,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate q-integers, q-factorials and Gaussian binomials.
    Qnum {
        #[command(subcommand)]
        which: QnumCommand,
    },
    /// Bracket of two (possibly inhomogeneous) algebra elements.
    Bracket {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Structure-constant table over the (windowed) basis, as JSON.
    BracketTable {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
    },
    /// Identity verifications with counterexample reporting.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Enveloping-algebra rewriting: normal forms and structure checks.
    Pbw {
        #[command(subcommand)]
        which: PbwCommand,
    },
    /// Matrix realizations of graded representations.
    Module {
        #[command(subcommand)]
        which: ModuleCommand,
    },
    /// Centralizer of a comma-separated list of elements.
    Centralizer {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        #[arg(long)]
        of: String,
    },
    /// Normalizer of the span of a comma-separated list of elements.
    Normalizer {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        #[arg(long)]
        of: String,
    },
}

#[derive(Subcommand)]
enum QnumCommand {
    Integer {
        #[arg(long)]
        n: i64,
    },
    Factorial {
        #[arg(long)]
        n: i64,
    },
    Binomial {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        r: i64,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Weighted q-Jacobi identity over all (windowed) basis triples.
    Jacobi {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
    },
    /// Antisymmetry over all (windowed) basis pairs.
    Antisym {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
    },
    /// Skew Leibniz rule for the Jackson derivative.
    Leibniz {
        #[arg(long, value_enum)]
        kind: LeibnizKind,
        #[arg(long, default_value_t = 10)]
        max: i64,
    },
    /// q-integer addition and q-Pascal identities on a rectangle.
    Pascal {
        #[arg(long, default_value_t = -6)]
        min: i64,
        #[arg(long, default_value_t = 12)]
        max: i64,
    },
    /// Central-extension cocycle: recursion, closed form, antisymmetry.
    Cocycle {
        #[arg(long, default_value_t = 20)]
        rmax: i64,
    },
}

#[derive(Subcommand)]
enum PbwCommand {
    /// Reduce an expression to its normal form.
    NormalForm {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value = "leftmost")]
        strategy: StrategyArg,
    },
    /// Resolve all overlap ambiguities and reduce the q-Jacobi sums.
    Confluence {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        /// Additionally compare reduction strategies on seeded random words.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        word_len: usize,
    },
    /// Commutators of the generators with the l-th power central elements.
    Central,
    /// Power-commutation identity for one (i, j, n).
    PowerComm {
        #[arg(long)]
        i: i64,
        #[arg(long)]
        j: i64,
        #[arg(long)]
        n: u32,
    },
    /// Leading-term law of the associated graded algebra.
    GradedLaw,
    /// Seeded spot check that products of nonzero normal forms are nonzero.
    ZeroDivisors {
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum ModuleCommand {
    /// Build the realization and report matrices and eigenvalues.
    Realize {
        #[arg(long)]
        t: String,
    },
    /// Graded submodule lattice and composition series.
    Analyze {
        #[arg(long)]
        t: String,
    },
    /// Deform the standard pair: e_(i) -> phi(e_(i)) + a psi(L_i).
    Deform {
        #[arg(long)]
        a: String,
    },
    /// Tensor the standard pair with a 1x1 factor rho.
    Tensor {
        #[arg(long)]
        omega: String,
    },
    /// Compatibility law report for the standard pair.
    Compat,
}

/// Run the CLI; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version on stdout with code 0; errors exit 2
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            // tolerate closed pipes (e.g. piping into `head`)
            use std::io::Write;
            let _ = writeln!(std::io::stdout(), "{}", outcome.rendered);
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

struct Outcome {
    rendered: String,
    passed: bool,
}

fn field_of(cli: &Cli) -> Result<ScalarField> {
    match (cli.mode, cli.l) {
        (Some(ModeArg::Generic), None) | (None, None) => Ok(ScalarField::generic()),
        (Some(ModeArg::Generic), Some(_)) => Err(Error::Unsupported(
            "--l applies to root mode only".to_string(),
        )),
        (Some(ModeArg::Root), Some(l)) | (None, Some(l)) => ScalarField::root_of_unity(l),
        (Some(ModeArg::Root), None) => Err(Error::Unsupported("root mode needs --l".to_string())),
    }
}

fn algebra_of(cli: &Cli, arg: AlgebraArg) -> Result<GradedAlgebra> {
    let field = field_of(cli)?;
    let kind = match arg {
        AlgebraArg::WittQ => AlgebraKind::WittQ,
        AlgebraArg::WittQ1 => AlgebraKind::WittQ1,
        AlgebraArg::WittEps => AlgebraKind::WittEps11,
        AlgebraArg::VirasoroQ => AlgebraKind::VirasoroQ,
        AlgebraArg::HolomorphQ => AlgebraKind::HolomorphQ,
        AlgebraArg::HolomorphEps => AlgebraKind::HolomorphEps1,
        AlgebraArg::Abelian => match field.order() {
            Some(l) => AlgebraKind::QAbelian(Some(l)),
            None => AlgebraKind::QAbelian(None),
        },
    };
    GradedAlgebra::new(kind, field)
}

fn sweep_basis(cli: &Cli, alg: &GradedAlgebra) -> Vec<BasisElement> {
    alg.finite_basis()
        .unwrap_or_else(|| alg.windowed_basis(-cli.window, cli.window))
}

fn mode_json(cli: &Cli) -> Value {
    match field_of(cli) {
        Ok(f) if f.is_generic() => json!({"mode": "generic", "l": Value::Null}),
        Ok(f) => json!({"mode": "root", "l": f.order()}),
        Err(_) => json!({"mode": Value::Null, "l": Value::Null}),
    }
}

fn report(cli: &Cli, command: &str, payload: Value, passed: bool, text: String) -> Outcome {
    if cli.json {
        let mut doc = json!({
            "command": command,
            "verdict": passed,
        });
        if let Value::Object(base) = &mut doc {
            if let Value::Object(m) = mode_json(cli) {
                base.extend(m);
            }
            if let Value::Object(p) = payload {
                base.extend(p);
            }
        }
        Outcome {
            rendered: serde_json::to_string_pretty(&doc).expect("serializable"),
            passed,
        }
    } else {
        Outcome {
            rendered: text,
            passed,
        }
    }
}

fn parse_expr(text: &str) -> Result<Expr> {
    expr::parse(text)
}

fn parse_elements(alg: &GradedAlgebra, text: &str) -> Result<Vec<qwitt::qlie::AlgebraElement>> {
    text.split(',')
        .map(|s| expr::eval_algebra_element(&parse_expr(s.trim())?, alg))
        .collect()
}

fn run_in_pool<F, R>(jobs: usize, f: F) -> Result<R>
where
    F: FnOnce() -> R + Send,
    R: Send,
{
    if jobs <= 1 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Qnum { which } => qnum(cli, which),
        Command::Bracket { algebra, lhs, rhs } => bracket_cmd(cli, *algebra, lhs, rhs),
        Command::BracketTable { algebra } => bracket_table_cmd(cli, *algebra),
        Command::Verify { which } => verify(cli, which),
        Command::Pbw { which } => pbw_cmd(cli, which),
        Command::Module { which } => module_cmd(cli, which),
        Command::Centralizer { algebra, of } => centralizer_cmd(cli, *algebra, of, false),
        Command::Normalizer { algebra, of } => centralizer_cmd(cli, *algebra, of, true),
    }
}

fn qnum(cli: &Cli, which: &QnumCommand) -> Result<Outcome> {
    let field = field_of(cli)?;
    let (name, value) = match which {
        QnumCommand::Integer { n } => ("q-integer", q_integer(&field, *n)),
        QnumCommand::Factorial { n } => ("q-factorial", q_factorial(&field, *n)?),
        QnumCommand::Binomial { n, r } => ("gaussian-binomial", gauss_binomial(&field, *n, *r)),
    };
    let text = value.to_string();
    Ok(report(
        cli,
        "qnum",
        json!({"kind": name, "value": text}),
        true,
        text.clone(),
    ))
}

fn bracket_cmd(cli: &Cli, algebra: AlgebraArg, lhs: &str, rhs: &str) -> Result<Outcome> {
    let alg = algebra_of(cli, algebra)?;
    let x = expr::eval_algebra_element(&parse_expr(lhs)?, &alg)?;
    let y = expr::eval_algebra_element(&parse_expr(rhs)?, &alg)?;
    let r = alg.bracket_elems(&x, &y)?;
    Ok(report(
        cli,
        "bracket",
        json!({"algebra": alg.kind().to_string(), "lhs": lhs, "rhs": rhs, "result": r.to_pairs()}),
        true,
        r.to_string(),
    ))
}

fn bracket_table_cmd(cli: &Cli, algebra: AlgebraArg) -> Result<Outcome> {
    let alg = algebra_of(cli, algebra)?;
    let basis = sweep_basis(cli, &alg);
    let table = bracket_table(&alg, &basis)?;
    let rows: Vec<Value> = table
        .iter()
        .map(|r| json!({"lhs": r.lhs, "rhs": r.rhs, "result": r.result}))
        .collect();
    let mut text = String::new();
    for r in &table {
        let pretty: Vec<String> = r.result.iter().map(|(b, c)| format!("{c}*{b}")).collect();
        let rhs = if pretty.is_empty() {
            "0".to_string()
        } else {
            pretty.join(" + ")
        };
        text.push_str(&format!("{{{}, {}}} = {}\n", r.lhs, r.rhs, rhs));
    }
    text.pop();
    Ok(report(
        cli,
        "bracket-table",
        json!({"algebra": alg.kind().to_string(), "table": rows}),
        true,
        text,
    ))
}

fn verify(cli: &Cli, which: &VerifyCommand) -> Result<Outcome> {
    match which {
        VerifyCommand::Jacobi { algebra } => {
            let alg = algebra_of(cli, *algebra)?;
            let basis = sweep_basis(cli, &alg);
            let n = basis.len();
            let failures: Vec<(usize, usize, usize)> = run_in_pool(cli.jobs, || {
                use rayon::prelude::*;
                (0..n * n * n)
                    .into_par_iter()
                    .filter_map(|idx| {
                        let (a, rest) = (idx / (n * n), idx % (n * n));
                        let (b, c) = (rest / n, rest % n);
                        match verify_weighted_jacobi(&alg, basis[a], basis[b], basis[c]) {
                            Ok(true) => None,
                            _ => Some((a, b, c)),
                        }
                    })
                    .collect()
            })?;
            let total = n * n * n;
            let counterexamples: Vec<String> = failures
                .iter()
                .map(|&(a, b, c)| format!("({}, {}, {})", basis[a], basis[b], basis[c]))
                .collect();
            let passed = counterexamples.is_empty();
            let text = if passed {
                format!("weighted q-Jacobi holds: {total} triples checked")
            } else {
                format!(
                    "weighted q-Jacobi FAILED on {} of {total} triples: {}",
                    counterexamples.len(),
                    counterexamples.join(", ")
                )
            };
            Ok(report(
                cli,
                "verify jacobi",
                json!({"algebra": alg.kind().to_string(), "triples": total,
                       "counterexamples": counterexamples}),
                passed,
                text,
            ))
        }
        VerifyCommand::Antisym { algebra } => {
            let alg = algebra_of(cli, *algebra)?;
            let basis = sweep_basis(cli, &alg);
            let mut counterexamples = Vec::new();
            for &x in &basis {
                for &y in &basis {
                    if !verify_antisymmetry(&alg, x, y)? {
                        counterexamples.push(format!("({x}, {y})"));
                    }
                }
            }
            let total = basis.len() * basis.len();
            let passed = counterexamples.is_empty();
            let text = if passed {
                format!("antisymmetry holds: {total} pairs checked")
            } else {
                format!("antisymmetry FAILED: {}", counterexamples.join(", "))
            };
            Ok(report(
                cli,
                "verify antisym",
                json!({"algebra": alg.kind().to_string(), "pairs": total,
                       "counterexamples": counterexamples}),
                passed,
                text,
            ))
        }
        VerifyCommand::Leibniz { kind, max } => {
            let field = field_of(cli)?;
            let mut counterexamples = Vec::new();
            let mut total = 0usize;
            match kind {
                LeibnizKind::Laurent => {
                    for m in -*max..=*max {
                        for n in -*max..=*max {
                            total += 1;
                            let u = LaurentPoly::monomial(&field, m);
                            let v = LaurentPoly::monomial(&field, n);
                            if !verify_skew_leibniz_laurent(&u, &v) {
                                counterexamples.push(format!("(x^{m}, x^{n})"));
                            }
                        }
                    }
                }
                LeibnizKind::Divided => {
                    let bound = field.order().map_or(*max, |l| l as i64 - 1).min(*max);
                    for a in 0..=bound {
                        for b in 0..=bound {
                            total += 1;
                            let u = DividedElement::monomial(&field, a as u32)?;
                            let v = DividedElement::monomial(&field, b as u32)?;
                            if !verify_skew_leibniz_divided(&u, &v) {
                                counterexamples.push(format!("(x^({a}), x^({b}))"));
                            }
                        }
                    }
                }
            }
            let passed = counterexamples.is_empty();
            let text = if passed {
                format!("skew Leibniz rule holds: {total} pairs checked")
            } else {
                format!("skew Leibniz FAILED: {}", counterexamples.join(", "))
            };
            Ok(report(
                cli,
                "verify leibniz",
                json!({"pairs": total, "counterexamples": counterexamples}),
                passed,
                text,
            ))
        }
        VerifyCommand::Pascal { min, max } => {
            let field = field_of(cli)?;
            let mut counterexamples = Vec::new();
            let mut total = 0usize;
            for a in *min..=*max {
                for b in *min..=*max {
                    total += 1;
                    if !verify_q_pascal(&field, a, b) {
                        counterexamples.push(format!("({a}, {b})"));
                    }
                }
            }
            let passed = counterexamples.is_empty();
            let text = if passed {
                format!("q-Pascal identities hold: {total} pairs checked")
            } else {
                format!("q-Pascal FAILED: {}", counterexamples.join(", "))
            };
            Ok(report(
                cli,
                "verify pascal",
                json!({"pairs": total, "counterexamples": counterexamples}),
                passed,
                text,
            ))
        }
        VerifyCommand::Cocycle { rmax } => {
            let field = field_of(cli)?;
            let recursion = verify_cocycle_recursion(&field, *rmax)?;
            let mut antisym = true;
            for i in 1..=12 {
                let plus = virasoro_cocycle(&field, i)?;
                let minus = virasoro_cocycle(&field, -i)?;
                if !(&plus + &minus).is_zero() {
                    antisym = false;
                }
            }
            let passed = recursion && antisym;
            let text = format!(
                "cocycle recursion/closed form up to r = {rmax}: {}; antisymmetry: {}",
                if recursion { "ok" } else { "FAILED" },
                if antisym { "ok" } else { "FAILED" },
            );
            Ok(report(
                cli,
                "verify cocycle",
                json!({"rmax": rmax, "recursion": recursion, "antisymmetry": antisym,
                       "counterexamples": Vec::<String>::new()}),
                passed,
                text,
            ))
        }
    }
}

fn reduction_system(cli: &Cli, algebra: AlgebraArg) -> Result<ReductionSystem> {
    let alg = algebra_of(cli, algebra)?;
    match alg.finite_basis() {
        Some(_) => ReductionSystem::new(alg),
        None => ReductionSystem::windowed(alg, -cli.window, cli.window),
    }
}

fn witt_eps_system(cli: &Cli) -> Result<ReductionSystem> {
    let field = field_of(cli)?;
    if field.is_generic() {
        return Err(Error::RequiresRootOfUnity);
    }
    ReductionSystem::new(GradedAlgebra::new(AlgebraKind::WittEps11, field)?)
}

fn pbw_cmd(cli: &Cli, which: &PbwCommand) -> Result<Outcome> {
    match which {
        PbwCommand::NormalForm {
            algebra,
            expr: input,
            strategy,
        } => {
            let sys = reduction_system(cli, *algebra)?;
            let p = expr::eval_noncomm(&parse_expr(input)?, sys.algebra())?;
            let strat = match strategy {
                StrategyArg::Leftmost => Strategy::Leftmost,
                StrategyArg::Rightmost => Strategy::Rightmost,
            };
            let nf = sys.normal_form_with(&p, strat)?;
            let (words, coefficients) = nf.to_json_parts();
            Ok(report(
                cli,
                "pbw normal-form",
                json!({"algebra": sys.algebra().kind().to_string(), "input": input,
                       "words": words, "coefficients": coefficients}),
                true,
                nf.to_string(),
            ))
        }
        PbwCommand::Confluence {
            algebra,
            samples,
            word_len,
        } => {
            let sys = reduction_system(cli, *algebra)?;
            let rep = sys.check_confluence()?;
            let counterexamples: Vec<String> = rep
                .ambiguities
                .iter()
                .filter(|a| !a.resolvable || !a.jacobi_sum_vanishes)
                .map(|a| {
                    format!(
                        "({}, {}, {}) resolvable={} jacobi-zero={}",
                        a.triple.0, a.triple.1, a.triple.2, a.resolvable, a.jacobi_sum_vanishes
                    )
                })
                .collect();
            let mut passed = rep.all_resolvable && rep.all_jacobi_vanish;
            let mut disagreement_count = 0usize;
            if *samples > 0 {
                let disagreements = strategy_agreement_sample(&sys, *samples, *word_len, cli.seed)?;
                disagreement_count = disagreements.len();
                if disagreement_count > 0 {
                    passed = false;
                }
            }
            let text = format!(
                "{} ambiguities: {} resolvable, {} with vanishing Jacobi sum{}{}",
                rep.ambiguities.len(),
                rep.ambiguities.iter().filter(|a| a.resolvable).count(),
                rep.ambiguities
                    .iter()
                    .filter(|a| a.jacobi_sum_vanishes)
                    .count(),
                if *samples > 0 {
                    format!("; strategy disagreements: {disagreement_count}/{samples} words")
                } else {
                    String::new()
                },
                if counterexamples.is_empty() {
                    String::new()
                } else {
                    format!("\nunresolved: {}", counterexamples.join("; "))
                },
            );
            Ok(report(
                cli,
                "pbw confluence",
                json!({"algebra": sys.algebra().kind().to_string(),
                       "ambiguities": rep.ambiguities.len(),
                       "all_resolvable": rep.all_resolvable,
                       "all_jacobi_vanish": rep.all_jacobi_vanish,
                       "strategy_disagreements": disagreement_count,
                       "counterexamples": counterexamples}),
                passed,
                text,
            ))
        }
        PbwCommand::Central => {
            let sys = witt_eps_system(cli)?;
            let rep = central_elements_check(&sys)?;
            let counterexamples: Vec<String> = rep
                .commutators
                .iter()
                .filter(|&&(_, _, ok)| !ok)
                .map(|&(g, z, _)| format!("[e({g}), z_({z})]"))
                .collect();
            let passed = rep.all_central;
            let text = if passed {
                format!(
                    "all {} commutators with the central elements vanish",
                    rep.commutators.len()
                )
            } else {
                format!("nonzero commutators: {}", counterexamples.join(", "))
            };
            Ok(report(
                cli,
                "pbw central",
                json!({"l": rep.l, "commutators": rep.commutators.len(),
                       "counterexamples": counterexamples}),
                passed,
                text,
            ))
        }
        PbwCommand::PowerComm { i, j, n } => {
            let sys = witt_eps_system(cli)?;
            let rep = power_commutation_check(&sys, *i, *j, *n)?;
            let passed = rep.holds;
            let closed = rep.closed_form.as_ref();
            let text = format!(
                "power commutation (i={i}, j={j}, n={n}): {}{}",
                if rep.holds { "holds" } else { "FAILED" },
                match closed {
                    None => String::new(),
                    Some(c) if c.matches => "; closed form agrees".to_string(),
                    Some(c) => format!(
                        "; closed form DIFFERS: normal form {} vs closed form {}",
                        c.normal_form, c.closed_form
                    ),
                }
            );
            Ok(report(
                cli,
                "pbw power-comm",
                json!({"i": i, "j": j, "n": n, "holds": rep.holds,
                       "closed_form_matches": closed.map(|c| c.matches),
                       "counterexamples": if passed { vec![] } else { vec![format!("(i={i}, j={j}, n={n})")] }}),
                passed,
                text,
            ))
        }
        PbwCommand::GradedLaw => {
            let sys = witt_eps_system(cli)?;
            let rep = graded_leading_term_check(&sys)?;
            let counterexamples: Vec<String> = rep
                .pairs
                .iter()
                .filter(|p| !p.ok)
                .map(|p| format!("(e({}), e({}))", p.i, p.j))
                .collect();
            let passed = rep.holds;
            let text = if passed {
                format!("leading-term law holds on all {} pairs", rep.pairs.len())
            } else {
                format!("leading-term law FAILED: {}", counterexamples.join(", "))
            };
            let pairs: Vec<Value> = rep
                .pairs
                .iter()
                .map(|p| json!({"i": p.i, "j": p.j, "leading": p.leading, "ok": p.ok}))
                .collect();
            Ok(report(
                cli,
                "pbw graded-law",
                json!({"pairs": pairs, "counterexamples": counterexamples}),
                passed,
                text,
            ))
        }
        PbwCommand::ZeroDivisors { trials } => {
            let sys = witt_eps_system(cli)?;
            let rep = zero_divisor_sample(&sys, *trials, cli.seed)?;
            let passed = rep.failures.is_empty();
            let counterexamples: Vec<String> = rep
                .failures
                .iter()
                .map(|(a, b)| format!("({a}) * ({b})"))
                .collect();
            let text = if passed {
                format!("no zero divisors among {} sampled products", rep.trials)
            } else {
                format!("zero divisors found: {}", counterexamples.join(", "))
            };
            Ok(report(
                cli,
                "pbw zero-divisors",
                json!({"trials": rep.trials, "seed": cli.seed,
                       "counterexamples": counterexamples}),
                passed,
                text,
            ))
        }
    }
}

fn weight_of(field: &ScalarField, text: &str) -> Result<WeightParameter> {
    let p = expr::eval_tpoly(&parse_expr(text)?, field)?;
    if p.is_constant() {
        Ok(WeightParameter::Value(p.coeff(0)))
    } else if p == TPoly::t(field) {
        Ok(WeightParameter::Symbolic)
    } else {
        Err(Error::Unsupported(
            "the weight must be a scalar or the bare indeterminate t".to_string(),
        ))
    }
}

fn module_report_json(m: &ModuleRealization, with_matrices: bool) -> Result<Value> {
    let analysis = if m.grading().is_some() {
        Some(graded_submodule_analysis(m)?)
    } else {
        None
    };
    let eigen = if m.grading().is_some() && m.weight().is_some() {
        let (base, top) = base_top_eigenvalues(m)?;
        Some((base.to_string(), top.to_string()))
    } else {
        None
    };
    let mut doc = json!({
        "dim": m.dim(),
        "grading": m.grading(),
        "t": m.weight().map(|t| t.to_string()),
        "submodules": analysis.as_ref().map(|a| a.submodules.clone()),
        "composition_series": analysis.as_ref().map(|a| a.composition_dims.clone()),
        "irreducible": analysis.as_ref().map(|a| a.irreducible),
        "base_eigenvalue": eigen.as_ref().map(|e| e.0.clone()),
        "top_eigenvalue": eigen.as_ref().map(|e| e.1.clone()),
    });
    if with_matrices {
        let mats: serde_json::Map<String, Value> = m
            .generators()
            .into_iter()
            .map(|i| (format!("e({i})"), json!(m.action(i).unwrap().to_strings())))
            .collect();
        if let Value::Object(base) = &mut doc {
            base.insert("matrices".to_string(), Value::Object(mats));
        }
    }
    Ok(doc)
}

fn module_text(m: &ModuleRealization) -> Result<String> {
    let mut out = format!("dimension {}\n", m.dim());
    if m.grading().is_some() {
        let analysis = graded_submodule_analysis(m)?;
        out.push_str(&format!(
            "irreducible: {}; composition factor dimensions: {:?}\n",
            analysis.irreducible, analysis.composition_dims
        ));
        if !analysis.submodules.is_empty() {
            out.push_str(&format!("graded submodules: {:?}\n", analysis.submodules));
        }
        if m.weight().is_some() {
            let (base, top) = base_top_eigenvalues(m)?;
            out.push_str(&format!("base eigenvalue: {base}; top eigenvalue: {top}\n"));
        }
    }
    for i in m.generators() {
        out.push_str(&format!("e({i}):\n"));
        for row in m.action(i).unwrap().to_strings() {
            out.push_str(&format!("  [{}]\n", row.join(", ")));
        }
    }
    out.pop();
    Ok(out)
}

fn module_cmd(cli: &Cli, which: &ModuleCommand) -> Result<Outcome> {
    let field = field_of(cli)?;
    match which {
        ModuleCommand::Realize { t } => {
            let w = weight_of(&field, t)?;
            let m = if field.is_generic() {
                realize_module_generic(&field, cli.window.max(1) as u32, &w)?
            } else {
                realize_module(&field, &w)?
            };
            let axiom = verify_module_axiom(&m)?;
            let mut payload = module_report_json(&m, true)?;
            if let Value::Object(base) = &mut payload {
                base.insert("module_axiom".to_string(), json!(axiom));
            }
            let text = format!(
                "module axiom: {}\n{}",
                if axiom { "ok" } else { "FAILED" },
                module_text(&m)?
            );
            Ok(report(cli, "module realize", payload, axiom, text))
        }
        ModuleCommand::Analyze { t } => {
            let w = weight_of(&field, t)?;
            let m = if field.is_generic() {
                realize_module_generic(&field, cli.window.max(1) as u32, &w)?
            } else {
                realize_module(&field, &w)?
            };
            let payload = module_report_json(&m, false)?;
            let text = module_text(&m)?;
            Ok(report(cli, "module analyze", payload, true, text))
        }
        ModuleCommand::Deform { a } => {
            let triple = standard_holomorph_pair(&field)?;
            let coeff = expr::eval_tpoly(&parse_expr(a)?, &field)?;
            let m = deform_representation(&triple, &coeff)?;
            let axiom = verify_module_axiom(&m)?;
            let mut payload = module_report_json(&m, true)?;
            if let Value::Object(base) = &mut payload {
                base.insert("module_axiom".to_string(), json!(axiom));
                base.insert("a".to_string(), json!(coeff.to_string()));
            }
            let text = format!(
                "deformation by a = {coeff}; module axiom: {}",
                if axiom { "ok" } else { "FAILED" }
            );
            Ok(report(cli, "module deform", payload, axiom, text))
        }
        ModuleCommand::Tensor { omega } => {
            let triple = standard_holomorph_pair(&field)?;
            let w = expr::eval_tpoly(&parse_expr(omega)?, &field)?;
            let mut rho = Matrix::zeros(&field, 1, 1);
            rho.set(0, 0, w.clone());
            let m = tensor_representation(&triple, &rho)?;
            let axiom = verify_module_axiom(&m)?;
            let mut payload = module_report_json(&m, true)?;
            if let Value::Object(base) = &mut payload {
                base.insert("module_axiom".to_string(), json!(axiom));
                base.insert("omega".to_string(), json!(w.to_string()));
            }
            let text = format!(
                "tensor with rho(w) = {w}; module axiom: {}",
                if axiom { "ok" } else { "FAILED" }
            );
            Ok(report(cli, "module tensor", payload, axiom, text))
        }
        ModuleCommand::Compat => {
            let triple = standard_holomorph_pair(&field)?;
            let rep = holomorph_compat_check(&triple)?;
            let entries: Vec<Value> = rep
                .entries
                .iter()
                .map(|e| {
                    json!({"i": e.i, "j": e.j, "mu": e.mu,
                           "proportional": e.proportional,
                           "matches_plain": e.matches_plain,
                           "matches_twisted": e.matches_twisted})
                })
                .collect();
            let passed = rep.compatible;
            let text = format!(
                "compatibility (plain binomial law): {}; q-commutation of the quantum space: {}; twisted variant everywhere: {}",
                if rep.compatible { "ok" } else { "FAILED" },
                if rep.psi_commutation { "ok" } else { "FAILED" },
                rep.all_twisted,
            );
            Ok(report(
                cli,
                "module compat",
                json!({"entries": entries, "compatible": rep.compatible,
                       "psi_commutation": rep.psi_commutation,
                       "all_twisted": rep.all_twisted,
                       "counterexamples": rep.entries.iter().filter(|e| !e.matches_plain)
                           .map(|e| format!("(i={}, j={})", e.i, e.j)).collect::<Vec<_>>()}),
                passed,
                text,
            ))
        }
    }
}

fn centralizer_cmd(cli: &Cli, algebra: AlgebraArg, of: &str, normalizer: bool) -> Result<Outcome> {
    let alg = algebra_of(cli, algebra)?;
    let elements = parse_elements(&alg, of)?;
    let window = if alg.finite_basis().is_some() {
        None
    } else {
        Some((-cli.window, cli.window))
    };
    let basis = if normalizer {
        q_normalizer(&alg, &elements, window)?
    } else {
        q_centralizer(&alg, &elements, window)?
    };
    let is_central = if !normalizer && elements.len() == 1 {
        Some(is_q_central(&alg, &elements[0], window)?)
    } else {
        None
    };
    let strings: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
    let name = if normalizer {
        "normalizer"
    } else {
        "centralizer"
    };
    let text = if strings.is_empty() {
        format!("{name} is trivial")
    } else {
        format!("{name} basis:\n  {}", strings.join("\n  "))
    };
    Ok(report(
        cli,
        name,
        json!({"algebra": alg.kind().to_string(), "basis": strings,
               "input_is_central": is_central}),
        true,
        text,
    ))
}
