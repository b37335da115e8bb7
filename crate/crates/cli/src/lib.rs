//! The `ba` command line: argument parsing, document I/O and the commands.
//!
//! Every command returns an [`Outcome`] instead of printing, so the binary
//! and the tests share one code path.
//!
//! Exit codes: 0 success, 1 a negative verdict (not very good, not
//! equivalent, zero value or zero q), 2 unreadable input or bad usage,
//! 3 an internal oracle or invariant mismatch.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ba_core::billiard::{bvalue_function, bvalue_function_brace, is_standard, standard_cba, verify_billiard, ConcreteBilliardArray};
use ba_core::document::{MatrixDocument, ValueFunctionDocument};
use ba_core::flags::{billiard_from_flags, flags_from_matrix};
use ba_core::qbinom::qbinom_matrix;
use ba_core::valuefn::{
    fine_preimage, hexagon_ratios, matrices_equivalent, matrix_from_window_dets, nice_form, random_nonzero,
    random_value_function, random_very_good, window_det_function,
};
use ba_core::{Error, Field, Location, Matrix, Scalar, Triangle, ValueFunction};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Outcome {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ba", version, about = "Very good matrices, Billiard Arrays and B-values")]
pub struct Cli {
    /// `rational` or `gf:p`
    #[arg(long, global = true)]
    pub field: Option<Field>,
    /// Write the document here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Det,
    Brace,
    Flags,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report whether a matrix is good and very good
    Check { file: PathBuf },
    /// B-values of a very good upper triangular matrix
    Bvalues {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "det")]
        method: Method,
    },
    /// The nice representative of a matrix's equivalence class
    Nice { file: PathBuf },
    /// Decide whether two matrices are diagonally equivalent
    Equiv { a: PathBuf, b: PathBuf },
    /// The very good matrix with the given window determinants
    Synth {
        #[arg(long = "from-values")]
        from_values: PathBuf,
    },
    /// The nice matrix with the given B-values
    FromBvalues {
        file: PathBuf,
        #[arg(long)]
        d: Option<usize>,
    },
    /// The q-binomial matrix
    Qbinom {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Draw a matrix, a value function, or the location labels of Δ_d
    Render {
        file: Option<PathBuf>,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Cross-check every pipeline stage on seeded random instances
    Selftest {
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::fail(EXIT_INPUT, text)
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Check { file } => cmd_check(cli, file),
        Command::Bvalues { file, method } => cmd_bvalues(cli, file, *method),
        Command::Nice { file } => cmd_nice(cli, file),
        Command::Equiv { a, b } => cmd_equiv(cli, a, b),
        Command::Synth { from_values } => cmd_synth(cli, from_values),
        Command::FromBvalues { file, d } => cmd_from_bvalues(cli, file, *d),
        Command::Qbinom { d, q } => cmd_qbinom(cli, *d, q),
        Command::Render { file, d } => cmd_render(cli, file.as_deref(), *d),
        Command::Selftest { d, trials } => {
            let field = cli.field.unwrap_or(Field::Rational);
            Ok(selftest(*d, field, *trials, cli.seed.unwrap_or(0), &Matrix::det))
        }
    };
    let outcome = result.unwrap_or_else(|e| Outcome::fail(exit_code(&e), format!("error: {e}")));
    deliver(outcome, cli.output.as_deref())
}

/// Moves a successful document to `--output` when one is given.
fn deliver(mut outcome: Outcome, output: Option<&Path>) -> Outcome {
    let Some(path) = output else { return outcome };
    if outcome.stdout.is_empty() {
        return outcome;
    }
    match fs::write(path, &outcome.stdout) {
        Ok(()) => {
            outcome.stdout.clear();
            outcome
        }
        Err(e) => Outcome::fail(EXIT_INPUT, format!("error: cannot write {}: {e}", path.display())),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotVeryGood(..) | Error::ZeroValue(_) | Error::ZeroQ | Error::SingularMatrix => EXIT_NEGATIVE,
        Error::InvalidBilliardArray(_) => EXIT_MISMATCH,
        _ => EXIT_INPUT,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn check_field(cli: &Cli, found: Field) -> Result<(), Error> {
    match cli.field {
        Some(want) if want != found => Err(Error::Parse(format!("document field is {found}, --field says {want}"))),
        _ => Ok(()),
    }
}

fn load_matrix(cli: &Cli, path: &Path) -> Result<Matrix, Error> {
    let t = MatrixDocument::parse(&read(path)?)?.to_matrix()?;
    check_field(cli, t.field())?;
    Ok(t)
}

fn load_upper(cli: &Cli, path: &Path) -> Result<Matrix, Error> {
    let t = load_matrix(cli, path)?;
    if !t.is_upper_triangular() {
        return Err(Error::Parse(format!("{}: nonzero entry below the diagonal", path.display())));
    }
    Ok(t)
}

fn load_value_function(cli: &Cli, path: &Path) -> Result<ValueFunction, Error> {
    let f = ValueFunctionDocument::parse(&read(path)?)?.to_value_function()?;
    check_field(cli, f.field())?;
    Ok(f)
}

fn matrix_out(t: &Matrix) -> Outcome {
    Outcome::ok(MatrixDocument::from_matrix(t).to_json())
}

fn value_function_out(f: &ValueFunction) -> Outcome {
    Outcome::ok(ValueFunctionDocument::from_value_function(f).to_json())
}

pub fn cmd_check(cli: &Cli, file: &Path) -> Result<Outcome, Error> {
    let t = load_matrix(cli, file)?;
    if !t.is_square() {
        return Err(Error::NotSquare { rows: t.rows(), cols: t.cols() });
    }
    if let Some((i, j)) = t.first_non_good_window() {
        return Ok(Outcome {
            stdout: format!("not good: window({i},{j}) singular\n"),
            stderr: String::new(),
            code: EXIT_NEGATIVE,
        });
    }
    if let Some((i, j)) = t.first_singular_window() {
        return Ok(Outcome {
            stdout: format!("good\nnot very good: window({i},{j}) singular\n"),
            stderr: String::new(),
            code: EXIT_NEGATIVE,
        });
    }
    Ok(Outcome::ok("good\nvery good\n".to_owned()))
}

fn bvalues_via_flags(t: &Matrix) -> Result<ValueFunction, Error> {
    let mf = flags_from_matrix(t)?;
    let ba = billiard_from_flags(&mf.u, &mf.u_prime, &mf.u_double_prime)?;
    bvalue_function_brace(&ConcreteBilliardArray::from_billiard_array(&ba)?)
}

pub fn cmd_bvalues(cli: &Cli, file: &Path, method: Method) -> Result<Outcome, Error> {
    let t = load_upper(cli, file)?;
    if let Some((i, j)) = t.first_singular_window() {
        return Err(Error::NotVeryGood(i, j));
    }
    let d = t.diameter();
    if d < 2 {
        let doc = ValueFunctionDocument::empty(d as i64 - 2, t.field());
        return Ok(Outcome {
            stdout: doc.to_json(),
            stderr: format!("notice: d = {d} has no white cliques; no B-values\n"),
            code: EXIT_OK,
        });
    }
    let det = || bvalue_function(&t);
    let brace = || bvalue_function_brace(&standard_cba(&t)?);
    let flags = || bvalues_via_flags(&t);
    let f = match method {
        Method::Det => det()?,
        Method::Brace => brace()?,
        Method::Flags => flags()?,
        Method::All => {
            let (a, b, c) = (det()?, brace()?, flags()?);
            if a != b || a != c {
                return Ok(Outcome::fail(EXIT_MISMATCH, "oracle mismatch: det, brace and flags B-values differ"));
            }
            a
        }
    };
    Ok(value_function_out(&f))
}

pub fn cmd_nice(cli: &Cli, file: &Path) -> Result<Outcome, Error> {
    let t = load_upper(cli, file)?;
    Ok(matrix_out(&nice_form(&t)?.matrix))
}

pub fn cmd_equiv(cli: &Cli, a: &Path, b: &Path) -> Result<Outcome, Error> {
    let (ta, tb) = (load_upper(cli, a)?, load_upper(cli, b)?);
    if matrices_equivalent(&ta, &tb)? {
        Ok(Outcome::ok("equivalent\n".to_owned()))
    } else {
        Ok(Outcome {
            stdout: "not equivalent\n".to_owned(),
            stderr: String::new(),
            code: EXIT_NEGATIVE,
        })
    }
}

pub fn cmd_synth(cli: &Cli, file: &Path) -> Result<Outcome, Error> {
    let f = load_value_function(cli, file)?;
    Ok(matrix_out(&matrix_from_window_dets(&f)?))
}

pub fn cmd_from_bvalues(cli: &Cli, file: &Path, d: Option<usize>) -> Result<Outcome, Error> {
    let g = load_value_function(cli, file)?;
    if let Some(d) = d {
        if d != g.diameter() + 2 {
            return Err(Error::Parse(format!(
                "--d {d} needs B-values on a triangle of diameter {}, found {}",
                d as i64 - 2,
                g.diameter()
            )));
        }
    }
    Ok(matrix_out(&matrix_from_window_dets(&fine_preimage(&g)?)?))
}

pub fn cmd_qbinom(cli: &Cli, d: usize, q: &str) -> Result<Outcome, Error> {
    let field = cli.field.unwrap_or(Field::Rational);
    let q = field.parse_scalar(q).map_err(|e| Error::Parse(format!("--q: {e}")))?;
    Ok(matrix_out(&qbinom_matrix(d, &q)?))
}

/// `(r,s,t)` as `rst` when every coordinate is a single digit, else `r,s,t`.
pub fn location_label(l: Location) -> String {
    if [l.r, l.s, l.t].iter().all(|c| (0..10).contains(c)) {
        format!("{}{}{}", l.r, l.s, l.t)
    } else {
        format!("{},{},{}", l.r, l.s, l.t)
    }
}

/// Lays out one label per location: rows by descending `s`, and `(r,s,t)`
/// in grid column `s + 2t`. Labels are centred in cells of width `w` on a
/// grid of pitch `h = ⌈(w+1)/2⌉`.
pub fn render_triangle(d: usize, label: impl Fn(Location) -> String) -> String {
    let labels: Vec<(Location, String)> = Triangle::new(d).locations().map(|l| (l, label(l))).collect();
    let w = labels.iter().map(|(_, s)| s.chars().count()).max().unwrap_or(1);
    let h = (w + 1).div_ceil(2);
    let mut out = String::new();
    for s in (0..=d as i64).rev() {
        let mut line: Vec<char> = vec![' '; (2 * d + 1) * h + w];
        for (l, text) in labels.iter().filter(|(l, _)| l.s == s) {
            let n = text.chars().count();
            let start = (l.s + 2 * l.t) as usize * h + (w - n) / 2;
            for (k, ch) in text.chars().enumerate() {
                line[start + k] = ch;
            }
        }
        let line: String = line.into_iter().collect();
        let _ = writeln!(out, "{}", line.trim_end());
    }
    out
}

/// `T_ij` sits at `(d-j, i, j-i)`, the location whose window has `T_ij` in
/// its bottom right corner.
pub fn render_matrix(t: &Matrix) -> String {
    let d = t.diameter();
    render_triangle(d, |l| t.get(l.s as usize, d - l.r as usize).to_string())
}

pub fn render_value_function(f: &ValueFunction) -> String {
    render_triangle(f.diameter(), |l| f.get(l).expect("in triangle").to_string())
}

pub fn cmd_render(cli: &Cli, file: Option<&Path>, d: Option<usize>) -> Result<Outcome, Error> {
    let Some(file) = file else {
        let d = d.ok_or_else(|| Error::Parse("render needs a file or --d".to_owned()))?;
        return Ok(Outcome::ok(render_triangle(d, location_label)));
    };
    let text = read(file)?;
    if let Ok(doc) = ValueFunctionDocument::parse(&text) {
        let f = doc.to_value_function()?;
        check_field(cli, f.field())?;
        return Ok(Outcome::ok(render_value_function(&f)));
    }
    let t = MatrixDocument::parse(&text)?.to_matrix()?;
    check_field(cli, t.field())?;
    if !t.is_upper_triangular() {
        return Err(Error::Parse(format!("{}: nonzero entry below the diagonal", file.display())));
    }
    Ok(Outcome::ok(render_matrix(&t)))
}

#[derive(Default)]
struct Tally {
    rows: Vec<(&'static str, usize, usize)>,
    first_failure: Option<String>,
}

impl Tally {
    fn record(&mut self, name: &'static str, ok: bool, trial: usize) {
        let row = match self.rows.iter_mut().find(|(n, _, _)| *n == name) {
            Some(row) => row,
            None => {
                self.rows.push((name, 0, 0));
                self.rows.last_mut().unwrap()
            }
        };
        row.2 += 1;
        if ok {
            row.1 += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(format!("{name} (trial {trial})"));
        }
    }
}

/// Runs the invariant suite on `trials` random very good matrices of
/// diameter `d`. `det` is the determinant routine under test; every window
/// determinant it returns is compared against cofactor expansion and the
/// B-values it implies against brace chasing.
pub fn selftest(d: usize, field: Field, trials: usize, seed: u64, det: &dyn Fn(&Matrix) -> Scalar) -> Outcome {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    for trial in 0..trials {
        let trial_seed = master.next_u64();
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        let t = random_very_good(d, field, trial_seed);
        let dets = ValueFunction::from_fn(d, field, |l| det(&t.window(l.t as usize, d - l.r as usize).unwrap()));

        let laplace_ok = dets.as_ref().is_ok_and(|f| {
            f.iter()
                .all(|(l, v)| &t.window(l.t as usize, d - l.r as usize).unwrap().det_laplace() == v)
        });
        tally.record("det vs cofactor expansion", laplace_ok, trial);

        let dets_ok = dets.as_ref().is_ok_and(|f| matrix_from_window_dets(f).as_ref() == Ok(&t));
        tally.record("window dets invert", dets_ok, trial);

        let cba = standard_cba(&t).unwrap();
        tally.record("billiard axioms", verify_billiard(&cba) && is_standard(&cba), trial);

        let mf = flags_from_matrix(&t).unwrap();
        let spans_ok = billiard_from_flags(&mf.u, &mf.u_prime, &mf.u_double_prime)
            .map(|ba| ba.iter().all(|(l, space)| space.contains(&cba.vector(l).unwrap()).unwrap()))
            .unwrap_or(false);
        tally.record("flag spans", spans_ok, trial);

        if d >= 2 {
            let brace = bvalue_function_brace(&cba).unwrap();
            let from_dets = dets.as_ref().ok().and_then(|f| hexagon_ratios(f).ok());
            tally.record("bvalues det vs brace", from_dets.as_ref() == Some(&brace), trial);
            tally.record("bvalues flags vs brace", bvalues_via_flags(&t).as_ref() == Ok(&brace), trial);
            let g = random_value_function(d - 2, field, &mut rng);
            let round = fine_preimage(&g).and_then(|f| hexagon_ratios(&f));
            tally.record("fine preimage", round.as_ref() == Ok(&g), trial);
        }

        let diag = |rng: &mut ChaCha8Rng| {
            let xs: Vec<Scalar> = (0..=d).map(|_| random_nonzero(field, rng)).collect();
            Matrix::diagonal(field, &xs).unwrap()
        };
        let (h, k) = (diag(&mut rng), diag(&mut rng));
        let htk = h.mul(&t).unwrap().mul(&k).unwrap();
        let nice = nice_form(&t).unwrap().matrix;
        let nice_ok = nice_form(&nice).unwrap().matrix == nice && nice_form(&htk).unwrap().matrix == nice;
        tally.record("nice form", nice_ok, trial);

        let doc = MatrixDocument::from_matrix(&t).to_json();
        let doc_ok = MatrixDocument::parse(&doc).and_then(|m| m.to_matrix()).as_ref() == Ok(&t)
            && window_det_function(&t).is_ok_and(|f| {
                let text = ValueFunctionDocument::from_value_function(&f).to_json();
                ValueFunctionDocument::parse(&text).and_then(|x| x.to_value_function()) == Ok(f)
            });
        tally.record("document round trip", doc_ok, trial);
    }

    let mut report = format!("selftest d={d} field={field} trials={trials} seed={seed}\n");
    let width = tally.rows.iter().map(|(n, _, _)| n.len()).max().unwrap_or(0);
    for (name, passed, total) in &tally.rows {
        let _ = writeln!(report, "  {name:<width$}  {passed}/{total}");
    }
    match &tally.first_failure {
        None => {
            report.push_str("PASS\n");
            Outcome::ok(report)
        }
        Some(first) => {
            let _ = writeln!(report, "FAIL: first failure in {first}");
            Outcome {
                stdout: report,
                stderr: String::new(),
                code: EXIT_MISMATCH,
            }
        }
    }
}
