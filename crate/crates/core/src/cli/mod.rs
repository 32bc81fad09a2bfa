//! Command-line front end. Reports go to stdout as `key=value` lines and
//! tables; diagnostics go to stderr as one `error=<kind> message=<text>` line.

mod source;

use std::ffi::OsString;
use std::fmt::{self, Write as _};
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::code::{self, SearchOptions};
use crate::complex::io::write_complex;
use crate::complex::SimplicialComplex;
use crate::cupgate::{
    cup_sum_tensor, fountain_schedule, induced_fountain_schedule, interaction_hypergraph, logical_action, phase_polynomial_check,
    synthesize_circuit, CczCircuit, InteractionHypergraph, LogicalCczTensor,
};
use crate::gf2::BitVector;
use crate::homology::{all_bases, poincare_pairing_of, HomologyBasis};
use crate::modelsearch::{self, Convention};
use crate::product::{ccz_count, kunneth_bases, kunneth_families, validate_basis, CrossCheck, FactorEvaluator};

pub use source::{parse_complex, Loaded};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad arguments or unreadable input: exit status 2.
    Usage(String),
    /// A computation or verification failed: exit status 1.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Failed(_) => "failed",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (CliError::Usage(m) | CliError::Failed(m)) = self;
        write!(f, "error={} message={}", self.kind(), m.replace('\n', " "))
    }
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn failed(e: impl fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "tricup", version, about = "Homological codes, cup-product CCZ circuits and dimension search")]
pub struct RunConfig {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Complex: `circle:L`, `torus:L`, `power:L:N`, `csum:L:M`, `point`,
    /// `file:PATH` or a path, joined by `*` for products.
    #[arg(long = "complex", visible_alias = "in", value_name = "SPEC")]
    pub complex: String,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[arg(long)]
    pub seed: u64,
    /// Largest kernel dimension enumerated exhaustively.
    #[arg(long, default_value_t = 26)]
    pub threshold: usize,
    /// Candidate budget of the weight-ordered search.
    #[arg(long, default_value_t = 50_000_000)]
    pub budget: u64,
    /// Random information-set draws after an incomplete search.
    #[arg(long, default_value_t = 200)]
    pub draws: usize,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            exhaustive_threshold: self.threshold,
            weight_budget: self.budget,
            random_draws: self.draws,
            seed: self.seed,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConventionArg {
    Tabulated,
    Displayed,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Tabulated => Convention::Tabulated,
            ConventionArg::Displayed => Convention::Displayed,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CheckArg {
    Aligned,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Build a complex and write it in complex-file format.
    Build {
        #[arg(long, group = "source")]
        torus: Option<usize>,
        #[arg(long, group = "source")]
        circle: Option<usize>,
        #[arg(long = "complex", group = "source", value_name = "SPEC")]
        complex: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Betti numbers and (co)homology representatives.
    Homology {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        q: Option<usize>,
        /// Write the basis at `--q` to this file.
        #[arg(long, requires = "q")]
        export: Option<PathBuf>,
    },
    /// CSS code at degree q.
    Code {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        q: usize,
        #[arg(long, value_delimiter = ',')]
        keep: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Code distance with the per-class table.
    Distance {
        #[arg(long = "complex", visible_alias = "in", value_name = "SPEC", required_unless_present = "code")]
        complex: Option<String>,
        /// Code file written by `code --out`.
        #[arg(long, conflicts_with = "complex")]
        code: Option<PathBuf>,
        #[arg(long, required_unless_present = "code")]
        q: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        keep: Option<Vec<usize>>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// CCZ circuit from triple cup products.
    Circuit {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Logical action of the circuit, cross-checked against cup sums.
    LogicalAction {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        /// Circuit file instead of synthesizing one.
        #[arg(long)]
        circuit: Option<PathBuf>,
    },
    /// Phase-polynomial, Stokes, Poincaré and cross-check suites.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Negative control: delete this top simplex before the phase check.
        #[arg(long)]
        drop_top: Option<usize>,
    },
    /// Interaction hypergraph of the logical action.
    Hypergraph {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Greedy fountain schedule on the interaction hypergraph.
    Fountain {
        #[arg(long = "complex", visible_alias = "in", value_name = "SPEC", required_unless_present = "hypergraph")]
        complex: Option<String>,
        #[arg(long, conflicts_with = "complex")]
        hypergraph: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        /// Reject edges that would leave an unselected edge inside the plus set.
        #[arg(long)]
        induced: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Künneth label families of a triple product.
    Families {
        /// Three factors joined by `*`.
        #[arg(long, required_unless_present = "betti")]
        factors: Option<String>,
        /// Betti numbers per factor, `1,2,1;1,2,1;1,2,1`.
        #[arg(long, conflicts_with = "factors")]
        betti: Option<String>,
        #[arg(long)]
        q: usize,
    },
    /// Logical CCZ count by label family on a triple product.
    CczCount {
        #[arg(long)]
        factors: String,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value_t = CheckArg::All)]
        check: CheckArg,
    },
    /// Valid parameter sets for every q up to `--qmax`.
    Search {
        #[arg(long)]
        qmax: usize,
        #[arg(long, value_enum, default_value_t = ConventionArg::Tabulated)]
        convention: ConventionArg,
        /// List every rotation instead of one per cycle.
        #[arg(long)]
        all_rotations: bool,
    },
    /// Bad dimensions and gaps of one parameter set.
    BadDims {
        /// `p0,s0;p1,s1;p2,s2`
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = ConventionArg::Tabulated)]
        convention: ConventionArg,
    },
}

fn parse_error(e: &clap::Error) -> CliError {
    let text = e.to_string();
    let first = text.lines().next().unwrap_or("bad arguments");
    usage(first.trim_start_matches("error: "))
}

/// Parses arguments, runs the verb and returns the report text.
pub fn run<I, T>(args: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (report, result) = run_capture(args);
    result.map(|_| report)
}

/// Like [`run`], but keeps the partial report of a failed verb.
pub fn run_capture<I, T>(args: I) -> (String, Result<(), CliError>)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run_config(&config),
        Err(e) => (String::new(), Err(parse_error(&e))),
    }
}

pub fn run_config(config: &RunConfig) -> (String, Result<(), CliError>) {
    let mut out = String::new();
    let result = execute(&config.verb, &mut out);
    (out, result)
}

/// Prints the report and any diagnostic line and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayHelpOnMissingArgumentOrSubcommand, DisplayVersion};
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            if e.kind() == DisplayHelpOnMissingArgumentOrSubcommand {
                let _ = e.print();
                return 2;
            }
            let err = parse_error(&e);
            eprintln!("{err}");
            return err.exit_code();
        }
    };
    let (report, result) = run_config(&config);
    let _ = std::io::stdout().lock().write_all(report.as_bytes());
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn join<T: fmt::Display>(v: impl IntoIterator<Item = T>, sep: &str) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Degrees for three code copies; defaults to `n/3` each when the dimension allows.
fn degrees_for(sc: &SimplicialComplex, given: &Option<Vec<usize>>) -> Result<[usize; 3], CliError> {
    match given {
        Some(d) if d.len() != 3 => Err(usage(format!("--degrees needs three values, got {}", d.len()))),
        Some(d) => {
            let d = [d[0], d[1], d[2]];
            if d.iter().sum::<usize>() != sc.dim() {
                return Err(usage(format!("degrees {d:?} must sum to the dimension {}", sc.dim())));
            }
            Ok(d)
        }
        None if sc.dim().is_multiple_of(3) => Ok([sc.dim() / 3; 3]),
        None => Err(usage(format!("dimension {} is not divisible by 3; pass --degrees", sc.dim()))),
    }
}

fn three_bases(bases: &[HomologyBasis], d: [usize; 3]) -> [&HomologyBasis; 3] {
    d.map(|q| &bases[q])
}

fn tensor_report(out: &mut String, t: &LogicalCczTensor) {
    let _ = writeln!(out, "dims={}", join(t.dims, ","));
    let _ = writeln!(out, "support={}", t.support());
    for (a, b, c) in &t.entries {
        let _ = writeln!(out, "entry {a} {b} {c}");
    }
}

fn execute(verb: &Verb, out: &mut String) -> Result<(), CliError> {
    match verb {
        Verb::Build {
            torus,
            circle,
            complex,
            out: path,
        } => {
            let sc = match (torus, circle, complex) {
                (Some(l), _, _) => SimplicialComplex::torus(*l).map_err(usage)?,
                (_, Some(l), _) => SimplicialComplex::circle(*l).map_err(usage)?,
                (_, _, Some(s)) => parse_complex(s)?.complex,
                _ => return Err(usage("one of --torus, --circle, --complex is required")),
            };
            let text = write_complex(&sc);
            let _ = writeln!(out, "dim={}", sc.dim());
            let _ = writeln!(out, "vertices={}", sc.num_vertices());
            let _ = writeln!(out, "f_vector={}", join(sc.f_vector(), ","));
            let _ = writeln!(out, "closed_manifold={}", sc.is_closed_manifold());
            match path {
                Some(p) => write_file(p, &text)?,
                None => out.push_str(&text),
            }
        }
        Verb::Homology { input, q, export } => {
            let loaded = parse_complex(&input.complex)?;
            let cc = loaded.complex.chain_complex().map_err(failed)?;
            let betti = cc.betti_numbers();
            let _ = writeln!(out, "dim={}", loaded.complex.dim());
            let _ = writeln!(out, "betti={}", join(&betti, ","));
            let _ = writeln!(out, "euler={}", cc.euler_characteristic());
            if let Some(q) = *q {
                if q > loaded.complex.dim() {
                    return Err(usage(format!("degree {q} exceeds dimension {}", loaded.complex.dim())));
                }
                let bases = loaded.bases(q)?;
                let b = &bases[q];
                let _ = writeln!(out, "q={q} classes={} normalized={}", b.len(), b.normalized);
                for (i, (c, z)) in b.cycles.iter().zip(&b.cocycles).enumerate() {
                    let _ = writeln!(out, "class {i} cycle_weight={} cocycle_weight={}", c.weight(), z.weight());
                }
                if let Some(p) = export {
                    write_file(p, &b.export())?;
                }
            }
        }
        Verb::Code {
            input,
            q,
            keep,
            out: path,
        } => {
            let loaded = parse_complex(&input.complex)?;
            let mut c = loaded.code(*q)?;
            if let Some(k) = keep {
                c = code::subsystem_select(&c, k).map_err(usage)?;
            }
            let _ = writeln!(out, "N={}", c.n_qubits());
            let _ = writeln!(out, "K={}", c.k());
            let _ = writeln!(out, "kept={}", c.kept().len());
            let _ = writeln!(out, "w={}", c.max_stabilizer_weight());
            let _ = writeln!(out, "x_checks={}", c.hx.rows());
            let _ = writeln!(out, "z_checks={}", c.hz_transpose().cols());
            let _ = writeln!(out, "commutes={}", c.commutes());
            if let Some(p) = path {
                write_file(p, &code::write_code(&c))?;
            }
            if !c.commutes() {
                return Err(failed("checks do not commute"));
            }
        }
        Verb::Distance {
            complex,
            code: code_file,
            q,
            keep,
            search,
        } => {
            let mut c = match (complex, code_file) {
                (_, Some(p)) => code::read_code(&read_file(p)?).map_err(usage)?,
                (Some(s), None) => parse_complex(s)?.code(q.expect("required by clap"))?,
                (None, None) => return Err(usage("--complex or --code is required")),
            };
            if let Some(k) = keep {
                c = code::subsystem_select(&c, k).map_err(usage)?;
            }
            let report = code::parameters_report(&c, &search.options()).map_err(failed)?;
            out.push_str(&report.render());
        }
        Verb::Circuit {
            input,
            degrees,
            out: path,
        } => {
            let loaded = parse_complex(&input.complex)?;
            let d = degrees_for(&loaded.complex, degrees)?;
            let circuit = synthesize_circuit(&loaded.complex, d[0], d[1], d[2]).map_err(failed)?;
            let _ = writeln!(out, "degrees={}", join(d, ","));
            let _ = writeln!(out, "candidates={}", circuit.candidates);
            let _ = writeln!(out, "gates={}", circuit.len());
            let _ = writeln!(out, "max_overlap={}", circuit.max_overlap());
            match path {
                Some(p) => write_file(p, &circuit.write())?,
                None => out.push_str(&circuit.write()),
            }
        }
        Verb::LogicalAction { input, degrees, circuit } => {
            let loaded = parse_complex(&input.complex)?;
            let d = degrees_for(&loaded.complex, degrees)?;
            let circuit = match circuit {
                Some(p) => CczCircuit::read(&read_file(p)?).map_err(usage)?,
                None => synthesize_circuit(&loaded.complex, d[0], d[1], d[2]).map_err(failed)?,
            };
            let bases = loaded.bases(*d.iter().max().unwrap())?;
            let b = three_bases(&bases, d);
            let t = logical_action(&circuit, b).map_err(usage)?;
            let direct = cup_sum_tensor(&loaded.complex, b).map_err(failed)?;
            tensor_report(out, &t);
            let agree = t == direct;
            let _ = writeln!(out, "cup_sum_crosscheck={}", if agree { "pass" } else { "fail" });
            if !agree {
                return Err(failed("logical action differs from triple cup sums"));
            }
        }
        Verb::Verify {
            input,
            degrees,
            trials,
            seed,
            drop_top,
        } => verify(out, &input.complex, degrees, *trials, *seed, *drop_top)?,
        Verb::Hypergraph {
            input,
            degrees,
            out: path,
        } => {
            let h = hypergraph_of(&input.complex, degrees)?;
            let _ = writeln!(out, "vertices={}", h.vertex_count());
            let _ = writeln!(out, "edges={}", h.edges.len());
            match path {
                Some(p) => write_file(p, &h.write())?,
                None => out.push_str(&h.write()),
            }
        }
        Verb::Fountain {
            complex,
            hypergraph,
            degrees,
            induced,
            out: path,
        } => {
            let h = match (complex, hypergraph) {
                (_, Some(p)) => InteractionHypergraph::read(&read_file(p)?).map_err(usage)?,
                (Some(s), None) => hypergraph_of(s, degrees)?,
                (None, None) => return Err(usage("--complex or --hypergraph is required")),
            };
            let s = if *induced {
                induced_fountain_schedule(&h)
            } else {
                fountain_schedule(&h)
            };
            let disjoint = s.is_disjoint(&h);
            let uncovered = s.uncovered_edges(&h);
            let _ = writeln!(out, "mode={}", if *induced { "induced" } else { "greedy" });
            let _ = writeln!(out, "edges={}", h.edges.len());
            let _ = writeln!(out, "magic_count={}", s.magic_count);
            let _ = writeln!(out, "disjoint={disjoint}");
            let _ = writeln!(out, "unselected_outside_zero={}", uncovered.len());
            match path {
                Some(p) => write_file(p, &s.write())?,
                None => out.push_str(&s.write()),
            }
            if !disjoint {
                return Err(failed("selected hyperedges overlap"));
            }
        }
        Verb::Families { factors, betti, q } => {
            let betti: Vec<Vec<usize>> = match (factors, betti) {
                (Some(f), _) => {
                    let loaded = parse_complex(f)?;
                    loaded
                        .factors
                        .iter()
                        .map(|sc| sc.chain_complex().map(|cc| cc.betti_numbers()))
                        .collect::<Result<_, _>>()
                        .map_err(failed)?
                }
                (None, Some(b)) => source::parse_betti(b)?,
                (None, None) => return Err(usage("--factors or --betti is required")),
            };
            if betti.len() != 3 {
                return Err(usage(format!("need three factors, got {}", betti.len())));
            }
            let table = kunneth_families([&betti[0], &betti[1], &betti[2]], *q).map_err(usage)?;
            let _ = writeln!(out, "q={q}");
            let _ = writeln!(out, "classes={}", table.len());
            for f in crate::product::Family::ALL {
                let _ = writeln!(out, "family {f} size={}", table.members(f).len());
            }
            out.push_str(&table.write());
        }
        Verb::CczCount { factors, q, check } => ccz_count_verb(out, factors, *q, *check)?,
        Verb::Search {
            qmax,
            convention,
            all_rotations,
        } => {
            let conv: Convention = (*convention).into();
            let _ = writeln!(out, "# convention={}", conv.name());
            for (_, sets) in modelsearch::search_min_q(*qmax, conv) {
                for s in sets.iter().filter(|s| *all_rotations || s.is_canonical()) {
                    let _ = writeln!(out, "{s}");
                }
            }
        }
        Verb::BadDims { set, convention } => {
            let conv: Convention = (*convention).into();
            let set = source::parse_parameter_set(set)?;
            let bad = modelsearch::bad_dimensions(&set, conv);
            let _ = writeln!(out, "convention={}", conv.name());
            let _ = writeln!(out, "q={}", set.q());
            let _ = writeln!(out, "dim={}", set.dim());
            let _ = writeln!(out, "valid={}", modelsearch::valid(&set, conv));
            let _ = writeln!(out, "bad={}", join(&bad, ","));
            let _ = writeln!(out, "gaps={}", join(modelsearch::gaps(&set, conv), ","));
        }
    }
    Ok(())
}

fn hypergraph_of(spec_text: &str, degrees: &Option<Vec<usize>>) -> Result<InteractionHypergraph, CliError> {
    let loaded = parse_complex(spec_text)?;
    let d = degrees_for(&loaded.complex, degrees)?;
    let bases = loaded.bases(*d.iter().max().unwrap())?;
    let t = cup_sum_tensor(&loaded.complex, three_bases(&bases, d)).map_err(failed)?;
    Ok(interaction_hypergraph(&t))
}

fn verify(
    out: &mut String,
    spec_text: &str,
    degrees: &Option<Vec<usize>>,
    trials: usize,
    seed: u64,
    drop_top: Option<usize>,
) -> Result<(), CliError> {
    let loaded = parse_complex(spec_text)?;
    let sc = &loaded.complex;
    let _ = writeln!(out, "seed={seed}");
    let _ = writeln!(out, "closed_manifold={}", sc.is_closed_manifold());
    let d = degrees_for(sc, degrees)?;
    let mut failures = Vec::new();
    if let Some(index) = drop_top {
        // negative control: the check is expected to fail on an open complex
        let bases = loaded.bases(*d.iter().max().unwrap())?;
        let open = sc.without_top_simplex(index).map_err(usage)?;
        let circuit = synthesize_circuit(&open, d[0], d[1], d[2]).map_err(failed)?;
        let r = phase_polynomial_check(&open, &circuit, three_bases(&bases, d), trials, seed).map_err(failed)?;
        let _ = writeln!(out, "negative_control drop_top={index}");
        let _ = writeln!(out, "phase trials={} passes={} failures={}", r.trials, r.passes, r.failures);
        let detected = r.failures > 0;
        let _ = writeln!(out, "result={}", if detected { "detected" } else { "undetected" });
        return if detected {
            Ok(())
        } else {
            Err(failed("negative control produced no failures"))
        };
    }
    if !sc.is_closed_manifold() {
        return Err(failed("complex is not a closed manifold"));
    }
    let n = sc.dim();
    let bases = loaded.bases(n)?;
    let cc = sc.chain_complex().map_err(failed)?;
    let betti = cc.betti_numbers();
    let _ = writeln!(out, "betti={}", join(&betti, ","));
    for b in &bases {
        let ok = b.normalized && validate_basis(sc, b, betti[b.degree]).is_ok();
        let _ = writeln!(out, "basis q={} classes={} ok={ok}", b.degree, b.len());
        if !ok {
            failures.push(format!("basis at degree {}", b.degree));
        }
    }

    let circuit = synthesize_circuit(sc, d[0], d[1], d[2]).map_err(failed)?;
    let b3 = three_bases(&bases, d);
    let r = phase_polynomial_check(sc, &circuit, b3, trials, seed).map_err(failed)?;
    let _ = writeln!(out, "phase trials={} passes={} failures={}", r.trials, r.passes, r.failures);
    if !r.all_passed() {
        failures.push("phase polynomial".into());
    }

    // Stokes: the coboundary of any (n-1)-cochain sums to zero over the top simplices
    let top = sc.boundary(n);
    let fundamental = sc.fundamental_chain();
    let mut stokes_pass = 0;
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trials as u64 + t as u64);
        let zeta = BitVector::random(top.rows(), &mut rng);
        if !top.transpose_mul_vec(&zeta).dot(&fundamental) {
            stokes_pass += 1;
        }
    }
    let _ = writeln!(out, "stokes trials={trials} passes={stokes_pass} failures={}", trials - stokes_pass);
    if stokes_pass != trials {
        failures.push("stokes".into());
    }

    for p in 0..=n {
        let m = poincare_pairing_of(sc, &bases[p], &bases[n - p]).map_err(failed)?;
        let rank = crate::gf2::rank(&m);
        let full = m.rows() == m.cols() && rank == m.rows();
        let _ = writeln!(out, "poincare p={p} size={}x{} rank={rank} full={full}", m.rows(), m.cols());
        if !full {
            failures.push(format!("poincare at degree {p}"));
        }
    }

    let t = logical_action(&circuit, b3).map_err(failed)?;
    let direct = cup_sum_tensor(sc, b3).map_err(failed)?;
    let agree = t == direct;
    let _ = writeln!(out, "tensor support={} cup_sum_crosscheck={}", t.support(), if agree { "pass" } else { "fail" });
    if !agree {
        failures.push("logical action cross-check".into());
    }
    let _ = writeln!(out, "result={}", if failures.is_empty() { "pass" } else { "fail" });
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failed(format!("failed checks: {}", failures.join(", "))))
    }
}

fn ccz_count_verb(out: &mut String, factors: &str, q: usize, check: CheckArg) -> Result<(), CliError> {
    let parts = source::parse_factors(factors)?;
    if parts.len() != 3 {
        return Err(usage(format!("need three factors, got {}", parts.len())));
    }
    let fb: Vec<Vec<HomologyBasis>> = parts
        .iter()
        .map(|sc| sc.chain_complex().map_err(failed).and_then(|cc| all_bases(&cc).map_err(failed)))
        .collect::<Result<_, _>>()?;
    let refs: Vec<&SimplicialComplex> = parts.iter().collect();
    let brefs: Vec<&[HomologyBasis]> = fb.iter().map(Vec::as_slice).collect();
    let (product, bases) = kunneth_bases(&refs, &brefs, q).map_err(failed)?;
    if q > product.dim() {
        return Err(usage(format!("degree {q} exceeds dimension {}", product.dim())));
    }
    if 3 * q != product.dim() {
        return Err(usage(format!("3q = {} must equal the dimension {}", 3 * q, product.dim())));
    }
    let betti = product.chain_complex().map_err(failed)?.betti_numbers();
    validate_basis(&product, &bases[q].basis, betti[q]).map_err(failed)?;
    let b = &bases[q].basis;
    let t = cup_sum_tensor(&product, [b, b, b]).map_err(failed)?;
    let factor_betti: Vec<Vec<usize>> = fb.iter().map(|v| v.iter().map(HomologyBasis::len).collect()).collect();
    let table = kunneth_families([&factor_betti[0], &factor_betti[1], &factor_betti[2]], q).map_err(failed)?;
    if table.labels != bases[q].labels {
        return Err(failed("family labels do not match the product basis"));
    }
    let mut eval = FactorEvaluator::new([&parts[0], &parts[1], &parts[2]], [&fb[0], &fb[1], &fb[2]]);
    let mode = match check {
        CheckArg::Aligned => CrossCheck::Aligned,
        CheckArg::All => CrossCheck::All,
    };
    let count = ccz_count(&t, &table, &mut eval, mode).map_err(failed)?;
    let _ = writeln!(out, "q={q}");
    let _ = writeln!(out, "classes={}", table.len());
    out.push_str(&count.render());
    if !count.mismatches.is_empty() {
        return Err(failed(format!("{} entries differ from the factorized evaluation", count.mismatches.len())));
    }
    Ok(())
}
