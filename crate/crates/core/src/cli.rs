//! Command-line front end. Exit codes: 0 success, 1 a claim or check
//! failed, 2 bad input, 3 certificate written without a nontriviality
//! witness.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::alexander::{
    abelianize_weights, alexander_poly, count_positive_roots, pretzel_delta, LaurentPoly,
};
use crate::braid::{
    axis_linking_number, braid_permutation, closure_components, positive_braid_genus,
    preset_kq_braid, preset_twisted_torus_braid, Braid,
};
use crate::commutator::{
    certificate_from_json, certificate_to_json, certify_for_presentation, verify_certificate,
};
use crate::dehn::{project_u, project_v, svk_presentation, svk_script, TwistRecipe};
use crate::presentation::{
    abelianization, default_max_degree, find_nonabelian_quotient, format_script, link_inner_word,
    parse_script, pm_script, preset_link_presentation, preset_pm_presentation,
    preset_pretzel_presentation, preset_twisted_torus_presentation, preset_w_qn, pretzel_script,
    replay, Presentation, ScriptedChain,
};
use crate::report::{find_claim, Report, RunConfig, CLAIMS};
use crate::word::{free_conjugate, parse_word, Generator, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "gtorsion",
    version,
    about = "Generalized torsion certificates for knot and link groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Free-group word utilities.
    #[command(subcommand)]
    Word(WordCmd),
    /// Build a torsion certificate and search for a nontriviality witness.
    Certify(CertifyArgs),
    /// Re-verify a certificate file.
    Verify { file: PathBuf },
    /// Run the claim checks and print a report.
    Reproduce(ReproduceArgs),
    /// Print a preset presentation.
    Present(PresentArgs),
    /// Tietze scripts.
    #[command(subcommand)]
    Tietze(TietzeCmd),
    /// Dehn-twist pipeline.
    #[command(subcommand)]
    Twist(TwistCmd),
    /// Braid invariants.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// Alexander polynomial and positive-root test.
    Alexander(AlexanderArgs),
}

#[derive(Subcommand, Debug)]
enum WordCmd {
    /// Print the reduced form.
    Reduce { word: String },
    /// Print `by^-1 of by`.
    Conjugate {
        #[arg(long)]
        of: String,
        #[arg(long)]
        by: String,
    },
    /// Print `[x, y]`.
    Commutator { x: String, y: String },
    /// Exit 0 iff the words are equal in the free group.
    Equal { u: String, v: String },
    /// Print a conjugator `g` with `g^-1 u g = v`; exit 1 if none.
    Conjugacy { u: String, v: String },
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[arg(long, requires = "n", conflicts_with = "presentation")]
    q: Option<i64>,
    #[arg(long, requires = "q")]
    n: Option<i64>,
    /// Presentation file.
    #[arg(long, requires_all = ["x", "w"])]
    presentation: Option<PathBuf>,
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    w: Option<String>,
    /// Defaults to 7, or the GTORSION_MAX_DEGREE environment variable.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    #[arg(long, conflicts_with = "claim")]
    all: bool,
    /// Run one claim; repeatable.
    #[arg(long)]
    claim: Vec<String>,
    /// List claim ids and exit.
    #[arg(long)]
    list: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_degree: Option<usize>,
    /// Include wall-clock runtimes (output is then not reproducible).
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PresetKind {
    Link,
    Wqn,
    TwistedTorus,
    Svk,
    Pretzel,
    Pm,
}

#[derive(Args, Debug)]
struct PresentArgs {
    #[arg(value_enum)]
    preset: PresetKind,
    #[arg(long, default_value_t = 1)]
    q: i64,
    #[arg(long, default_value_t = 1)]
    n: i64,
    #[arg(long, default_value_t = 2)]
    p: i64,
    #[arg(long, default_value_t = 1)]
    m: i64,
    #[arg(long, default_value_t = 1)]
    s: i64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ChainKind {
    /// Three-generator presentation to `<a, c>`.
    Svk,
    /// K(5,3;2,s) to the `<b, y>` presentation.
    Pretzel,
    /// The s = 1 family to `c^j = w(a^-1, c)`.
    Pm,
}

#[derive(Args, Debug)]
struct ChainArgs {
    #[arg(long, value_enum)]
    chain: ChainKind,
    #[arg(long, default_value_t = 2)]
    p: i64,
    #[arg(long, default_value_t = 1)]
    m: i64,
    #[arg(long, default_value_t = 1)]
    s: i64,
}

#[derive(Subcommand, Debug)]
enum TietzeCmd {
    /// Replay a script file, or a bundled chain.
    Replay {
        script: Option<PathBuf>,
        #[arg(long, requires_all = ["script", "to"])]
        from: Option<PathBuf>,
        #[arg(long)]
        to: Option<PathBuf>,
        #[arg(long, value_enum, conflicts_with = "script")]
        chain: Option<ChainKind>,
        #[arg(long, default_value_t = 2)]
        p: i64,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long, default_value_t = 1)]
        s: i64,
    },
    /// Write a bundled chain as `initial.pres`, `script.tz`, `expected.pres`.
    Emit {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long)]
        dir: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum TwistCmd {
    /// Images, projections, SvK presentation, and the Tietze chain.
    Derive {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        s: i64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BraidPreset {
    Kq,
    TwistedTorus,
}

#[derive(Subcommand, Debug)]
enum BraidCmd {
    /// Permutation, components, genus, and axis linking number.
    Analyze {
        /// Braid text such as `@5 s1 s2 s3 s4 s1 s2`.
        braid: Option<String>,
        #[arg(long, value_enum, conflicts_with = "braid")]
        preset: Option<BraidPreset>,
        #[arg(long, default_value_t = 1)]
        q: i64,
        #[arg(long, default_value_t = 1)]
        n: i64,
        #[arg(long, default_value_t = 2)]
        p: i64,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long, default_value_t = 0)]
        s: i64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AlexanderPreset {
    Pretzel,
    Closed,
}

#[derive(Args, Debug)]
struct AlexanderArgs {
    /// `pretzel` runs Fox calculus on the `<b, y>` presentation; `closed`
    /// evaluates the closed form.
    #[arg(long, value_enum, conflicts_with = "presentation")]
    preset: Option<AlexanderPreset>,
    #[arg(long, default_value_t = 0)]
    s: i64,
    #[arg(long)]
    presentation: Option<PathBuf>,
}

/// An error message paired with its exit code.
struct Failure(i32, String);

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure(EXIT_INPUT, e.to_string())
}

type Outcome = Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name), writing to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
        }
    };
    let result = match cli.command {
        Command::Word(cmd) => cmd_word(cmd, out),
        Command::Certify(args) => cmd_certify(args, out),
        Command::Verify { file } => cmd_verify(&file, out),
        Command::Reproduce(args) => cmd_reproduce(args, out),
        Command::Present(args) => cmd_present(args, out),
        Command::Tietze(cmd) => cmd_tietze(cmd, out),
        Command::Twist(cmd) => cmd_twist(cmd, out),
        Command::Braid(cmd) => cmd_braid(cmd, out),
        Command::Alexander(args) => cmd_alexander(args, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|e| Failure(EXIT_FAIL, e.to_string()))?
    };
}

fn word(text: &str) -> Result<Word, Failure> {
    parse_word(text, None).map_err(input)
}

fn cmd_word(cmd: WordCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        WordCmd::Reduce { word: w } => say!(out, "{}", word(&w)?),
        WordCmd::Conjugate { of, by } => say!(out, "{}", word(&of)?.conjugate(&word(&by)?)),
        WordCmd::Commutator { x, y } => say!(out, "{}", Word::commutator(&word(&x)?, &word(&y)?)),
        WordCmd::Equal { u, v } => {
            let eq = word(&u)? == word(&v)?;
            say!(out, "{eq}");
            return Ok(if eq { EXIT_OK } else { EXIT_FAIL });
        }
        WordCmd::Conjugacy { u, v } => match free_conjugate(&word(&u)?, &word(&v)?) {
            Some(g) => say!(out, "{g}"),
            None => {
                say!(out, "none");
                return Ok(EXIT_FAIL);
            }
        },
    }
    Ok(EXIT_OK)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(EXIT_FAIL, format!("{}: {e}", path.display())))
}

fn read_presentation(path: &Path) -> Result<Presentation, Failure> {
    read(path)?.parse().map_err(input)
}

fn cmd_certify(args: CertifyArgs, out: &mut dyn Write) -> Outcome {
    let (pres, x, w) = match (args.q, args.n, &args.presentation) {
        (Some(q), Some(n), None) => (
            preset_link_presentation(q, n).map_err(input)?,
            "b".to_string(),
            link_inner_word(q, n).map_err(input)?,
        ),
        (None, None, Some(path)) => {
            let pres = read_presentation(path)?;
            let x = args.x.clone().expect("clap requires --x");
            let w = parse_word(
                args.w.as_deref().expect("clap requires --w"),
                Some(pres.generators()),
            )
            .map_err(input)?;
            (pres, x, w)
        }
        _ => {
            return Err(input(
                "give either --q and --n, or --presentation with --x and --w",
            ))
        }
    };
    let x = Generator::new(&x).map_err(input)?;
    let mut cert = certify_for_presentation(&pres, &x, &w).map_err(input)?;
    let max_degree = args.max_degree.unwrap_or_else(default_max_degree);
    // The witness must keep the base element away from the identity, i.e.
    // the images of x and the other letter must not commute.
    let other = cert
        .base
        .letters()
        .iter()
        .find(|l| l.gen != x)
        .map(|l| Word::from_letters([l.clone()]))
        .expect("base involves a second generator");
    cert.nontriviality =
        find_nonabelian_quotient(&pres, &x.word(), &other, max_degree).map_err(input)?;
    let text = certificate_to_json(&cert);
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => write!(out, "{text}").map_err(|e| Failure(EXIT_FAIL, e.to_string()))?,
    }
    if let Err(fault) = verify_certificate(&cert) {
        eprintln!("certificate does not verify: {fault}");
        return Ok(EXIT_FAIL);
    }
    if cert.nontriviality.is_none() {
        eprintln!(
            "no permutation quotient up to degree {max_degree} separates {}",
            cert.base
        );
        return Ok(EXIT_INCOMPLETE);
    }
    eprintln!(
        "verified: {} is a product of {} conjugates of {}",
        cert.target,
        cert.factors.len(),
        cert.base
    );
    Ok(EXIT_OK)
}

fn cmd_verify(file: &Path, out: &mut dyn Write) -> Outcome {
    let cert = certificate_from_json(&read(file)?).map_err(input)?;
    match verify_certificate(&cert) {
        Ok(()) if cert.is_complete() => {
            say!(out, "verified: {} is generalized torsion", cert.base);
            Ok(EXIT_OK)
        }
        Ok(()) => {
            say!(
                out,
                "free-group identity verified; certificate is incomplete"
            );
            Ok(EXIT_INCOMPLETE)
        }
        Err(fault) => {
            say!(out, "rejected: {fault}");
            Ok(EXIT_FAIL)
        }
    }
}

fn cmd_reproduce(args: ReproduceArgs, out: &mut dyn Write) -> Outcome {
    if args.list {
        for c in CLAIMS {
            say!(out, "{}\t{}", c.id, c.summary);
        }
        return Ok(EXIT_OK);
    }
    let claims: Vec<_> = if args.all || args.claim.is_empty() {
        CLAIMS.iter().collect()
    } else {
        args.claim
            .iter()
            .map(|id| find_claim(id).ok_or_else(|| input(format!("unknown claim `{id}`"))))
            .collect::<Result<_, _>>()?
    };
    let cfg = RunConfig {
        seed: args.seed,
        max_degree: args.max_degree.unwrap_or_else(default_max_degree),
    };
    let report = Report::run(&claims, &cfg);
    let text = report.render(args.timings);
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => write!(out, "{text}").map_err(|e| Failure(EXIT_FAIL, e.to_string()))?,
    }
    if report.all_pass() {
        Ok(EXIT_OK)
    } else {
        eprintln!("failing claims: {}", report.failed_claims().join(", "));
        Ok(EXIT_FAIL)
    }
}

fn cmd_present(args: PresentArgs, out: &mut dyn Write) -> Outcome {
    let PresentArgs {
        preset,
        q,
        n,
        p,
        m,
        s,
    } = args;
    let pres = match preset {
        PresetKind::Link => preset_link_presentation(q, n).map_err(input)?,
        PresetKind::Wqn => {
            let w = preset_w_qn(q, n).map_err(input)?;
            Presentation::new(w.support().into_iter().collect(), vec![w]).map_err(input)?
        }
        PresetKind::TwistedTorus => preset_twisted_torus_presentation(p, m, s).map_err(input)?,
        PresetKind::Svk => svk_presentation(p, m, s).map_err(input)?,
        PresetKind::Pretzel => preset_pretzel_presentation(s).map_err(input)?,
        PresetKind::Pm => preset_pm_presentation(p, m).map_err(input)?,
    };
    write!(out, "{pres}").map_err(|e| Failure(EXIT_FAIL, e.to_string()))?;
    Ok(EXIT_OK)
}

fn bundled_chain(kind: ChainKind, p: i64, m: i64, s: i64) -> Result<ScriptedChain, Failure> {
    match kind {
        ChainKind::Svk => svk_script(p, m, s).map_err(input),
        ChainKind::Pretzel => pretzel_script(s).map_err(input),
        ChainKind::Pm => pm_script(p, m).map_err(input),
    }
}

fn cmd_tietze(cmd: TietzeCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        TietzeCmd::Replay {
            script,
            from,
            to,
            chain,
            p,
            m,
            s,
        } => {
            let chain = match (script, chain) {
                (Some(path), None) => {
                    let script = parse_script(&read(&path)?).map_err(input)?;
                    let (Some(from), Some(to)) = (from, to) else {
                        return Err(input("a script file needs --from and --to"));
                    };
                    ScriptedChain {
                        initial: read_presentation(&from)?,
                        script,
                        expected: read_presentation(&to)?,
                    }
                }
                (None, Some(kind)) => bundled_chain(kind, p, m, s)?,
                _ => return Err(input("give a script file or --chain")),
            };
            match replay(&chain.initial, &chain.script, &chain.expected) {
                Ok(outcome) => {
                    for line in &outcome.transcript {
                        say!(out, "{line}");
                    }
                    Ok(if outcome.matches { EXIT_OK } else { EXIT_FAIL })
                }
                Err(e) => {
                    say!(out, "replay failed at {e}");
                    Ok(EXIT_FAIL)
                }
            }
        }
        TietzeCmd::Emit { chain, dir } => {
            let c = bundled_chain(chain.chain, chain.p, chain.m, chain.s)?;
            fs::create_dir_all(&dir).map_err(|e| Failure(EXIT_FAIL, e.to_string()))?;
            write_file(&dir.join("initial.pres"), &c.initial.to_string())?;
            write_file(&dir.join("script.tz"), &format_script(&c.script))?;
            write_file(&dir.join("expected.pres"), &c.expected.to_string())?;
            say!(out, "wrote {}", dir.display());
            Ok(EXIT_OK)
        }
    }
}

fn cmd_twist(cmd: TwistCmd, out: &mut dyn Write) -> Outcome {
    let TwistCmd::Derive { p, m, s } = cmd;
    let recipe = TwistRecipe::new(p, m, s).map_err(input)?;
    for (name, start) in [("G", "b"), ("R", "d"), ("P", "c")] {
        let trace = recipe.trace(&start.parse().expect("generator"));
        let chain: Vec<String> = trace.iter().map(Word::to_string).collect();
        say!(out, "[{name}] = {}", chain.join(" -> "));
        let img = trace.last().expect("non-empty");
        say!(out, "  U: {}    V: {}", project_u(img), project_v(img));
    }
    let svk = svk_presentation(p, m, s).map_err(input)?;
    say!(out, "SvK presentation:");
    write!(out, "{svk}").map_err(|e| Failure(EXIT_FAIL, e.to_string()))?;
    let chain = svk_script(p, m, s).map_err(input)?;
    match replay(&chain.initial, &chain.script, &chain.expected) {
        Ok(outcome) => {
            for line in &outcome.transcript {
                say!(out, "{line}");
            }
            say!(out, "result:");
            write!(out, "{}", outcome.result).map_err(|e| Failure(EXIT_FAIL, e.to_string()))?;
            Ok(if outcome.matches { EXIT_OK } else { EXIT_FAIL })
        }
        Err(e) => {
            say!(out, "replay failed at {e}");
            Ok(EXIT_FAIL)
        }
    }
}

fn cmd_braid(cmd: BraidCmd, out: &mut dyn Write) -> Outcome {
    let BraidCmd::Analyze {
        braid,
        preset,
        q,
        n,
        p,
        m,
        s,
    } = cmd;
    let b: Braid = match (braid, preset) {
        (Some(text), None) => text.parse().map_err(input)?,
        (None, Some(BraidPreset::Kq)) => preset_kq_braid(q, n).map_err(input)?,
        (None, Some(BraidPreset::TwistedTorus)) => {
            preset_twisted_torus_braid(p, m, s).map_err(input)?
        }
        _ => return Err(input("give a braid or --preset")),
    };
    say!(out, "braid\t{b}");
    say!(out, "strands\t{}", b.strands());
    say!(out, "length\t{}", b.length());
    say!(out, "permutation\t{}", braid_permutation(&b));
    say!(out, "components\t{}", closure_components(&b));
    match positive_braid_genus(&b) {
        Ok(g) => say!(out, "genus\t{g}"),
        Err(e) => say!(out, "genus\t- ({e})"),
    }
    say!(out, "axis_linking\t{}", axis_linking_number(&b));
    Ok(EXIT_OK)
}

fn describe_poly(d: &LaurentPoly, out: &mut dyn Write) -> Outcome {
    say!(out, "delta\t{d}");
    say!(out, "delta(1)\t{}", d.eval_at_one());
    say!(out, "symmetric\t{}", d.equal_up_to_units(&d.reciprocal()));
    let roots = count_positive_roots(d).map_err(input)?;
    say!(out, "positive_real_roots\t{roots}");
    Ok(EXIT_OK)
}

fn cmd_alexander(args: AlexanderArgs, out: &mut dyn Write) -> Outcome {
    let pres = match (args.preset, &args.presentation) {
        (Some(AlexanderPreset::Closed), None) => {
            return describe_poly(&pretzel_delta(args.s).map_err(input)?, out);
        }
        (Some(AlexanderPreset::Pretzel), None) => {
            preset_pretzel_presentation(args.s).map_err(input)?
        }
        (None, Some(path)) => read_presentation(path)?,
        _ => return Err(input("give --preset or --presentation")),
    };
    say!(out, "H1\t{}", abelianization(&pres));
    let weights = abelianize_weights(&pres).map_err(input)?;
    let parts: Vec<String> = weights.0.iter().map(|(g, k)| format!("{g}={k}")).collect();
    say!(out, "weights\t{}", parts.join(" "));
    let d = alexander_poly(&pres).map_err(input)?;
    describe_poly(&d, out)
}
