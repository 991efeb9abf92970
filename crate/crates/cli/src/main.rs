//! `locus`: compactness loci of inflation, geometric fixed points and finite
//! localizations, as JSON or figures.

mod selector;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use locus_core::group::{catalog::CatalogName, spec_file, Caps, PermGroup, Prime, SubgroupLattice};
use locus_core::loci::{
    absolute_geometric_fixed_locus, class_labels, containing_classes, geometric_fixed_locus,
    inflation_locus, n_free_locus, orbit_support, EqSpectrum, LocusDocument, LocusKind,
};
use locus_core::render::{self, FigureLayout, Format};
use locus_core::space::{
    finite_localization_locus, is_clopen, sh_localization_locus, ChromaticSpace, ChromaticSubset,
    FinitePoset, PosetSubset, SubsetDocument,
};
use locus_core::verify::{self, VerifyConfig};
use locus_core::Error;

use selector::Want;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Ambiguous(String),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Ambiguous(_) => 3,
            CliError::Core(Error::CapExceeded { .. }) => 4,
            CliError::Core(Error::NotClosed | Error::IllegalThomason(_)) => 5,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => f.write_str(m),
            CliError::Ambiguous(m) => write!(f, "ambiguous selector: {m}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "locus",
    version,
    about = "Compactness loci of geometric functors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Locus of inflation SH(G/N) -> SH(G).
    Inflation(NormalArgs),
    /// Locus of relative geometric fixed points SH(G) -> SH(G/N).
    Geomfix(NormalArgs),
    /// Locus of absolute geometric fixed points SH(G) -> SH for a subgroup H.
    Absfix(SubgroupArgs),
    /// Support of the orbit G/H_+.
    Support(SubgroupArgs),
    /// Locus of N-free G-spectra.
    Nfree(NormalArgs),
    /// Finite localization of a finite spectral space or of SH.
    Localize(LocalizeArgs),
    /// Cross-check the algorithms against brute-force oracles.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Catalog name (C5, D10, S4, A5, C2xC4) or a group-spec file.
    #[arg(long)]
    group: String,
    /// Extra primes listed as explicit columns, comma separated.
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// Write here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Svg,
    Dot,
    Ascii,
}

impl OutFormat {
    fn figure(self) -> Option<Format> {
        match self {
            OutFormat::Json => None,
            OutFormat::Svg => Some(Format::Svg),
            OutFormat::Dot => Some(Format::Dot),
            OutFormat::Ascii => Some(Format::Ascii),
        }
    }
}

#[derive(Args, Debug)]
struct NormalArgs {
    #[command(flatten)]
    common: Common,
    /// Normal subgroup: 1, G, a catalog name, ORDER:INDEX, a class label or
    /// an element list such as "(1 2 3 4 5)".
    #[arg(long)]
    normal: String,
}

#[derive(Args, Debug)]
struct SubgroupArgs {
    #[command(flatten)]
    common: Common,
    /// Subgroup, in the same forms as --normal.
    #[arg(long)]
    subgroup: String,
}

#[derive(Args, Debug)]
struct LocalizeArgs {
    /// Poset file (`point a` / `spec a b` lines).
    #[arg(long, conflicts_with = "sh", required_unless_present = "sh")]
    poset: Option<PathBuf>,
    /// Closed subset Y of the poset, as comma-separated point names.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["y", "sh"])]
    closed: Option<Vec<String>>,
    /// Y as a JSON document (poset subset, or chromatic subset with --sh).
    #[arg(long)]
    y: Option<PathBuf>,
    /// Work in the chromatic model of SH instead of a poset.
    #[arg(long)]
    sh: bool,
    /// p-localization: Y is every column except p.
    #[arg(long, requires = "sh", conflicts_with = "y")]
    invert_at: Option<u64>,
    /// Primes drawn as explicit columns in the chromatic model.
    #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
    primes: Vec<u64>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Largest catalog group order to check.
    #[arg(long, default_value_t = 60)]
    max_order: usize,
    /// Number of random posets.
    #[arg(long, default_value_t = 200)]
    posets: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    /// Flip one expected value; the run must then fail.
    #[arg(long, hide = true)]
    corrupt_fixture: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Inflation(a) => normal_locus(a, LocusKind::Inflation),
        Command::Geomfix(a) => normal_locus(a, LocusKind::GeometricFixedPoints),
        Command::Nfree(a) => normal_locus(a, LocusKind::NFree),
        Command::Support(a) => support(a),
        Command::Absfix(a) => absfix(a),
        Command::Localize(a) => localize(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

struct Loaded {
    name: String,
    spectrum: Arc<EqSpectrum>,
    labels: Vec<String>,
}

fn load(common: &Common) -> Result<Loaded, CliError> {
    let caps = Caps::from_env();
    let (name, group) = load_group(&common.group, caps)?;
    let extra = primes(&common.primes)?;
    let lattice = SubgroupLattice::new(Arc::new(group), caps)?;
    let spectrum = Arc::new(EqSpectrum::with_extra_primes(Arc::new(lattice), extra));
    let labels = class_labels(spectrum.lattice(), &name);
    let tags: Vec<String> = spectrum.tags().iter().map(ToString::to_string).collect();
    eprintln!(
        "{name}: |G| = {}, {} classes, primes {}",
        spectrum.group().order(),
        spectrum.num_classes(),
        tags.join(",")
    );
    if common.out.verbose > 0 {
        for (i, c) in spectrum.lattice().classes().iter().enumerate() {
            eprintln!(
                "  {:<8} order {:<4} class size {:<4} {}",
                labels[i],
                c.order(),
                c.class_size(),
                c.representative().describe(spectrum.group())
            );
        }
    }
    Ok(Loaded {
        name,
        spectrum,
        labels,
    })
}

fn load_group(spec: &str, caps: Caps) -> Result<(String, PermGroup), CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = read(path)?;
        let name = path
            .file_stem()
            .map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into_owned());
        return Ok((name, spec_file::parse_group(&text, caps)?));
    }
    let name = CatalogName::parse(spec).ok_or_else(|| Error::UnknownGroup(spec.to_string()))?;
    Ok((spec.trim().to_string(), name.build(caps)?))
}

fn primes(list: &[u64]) -> Result<Vec<Prime>, CliError> {
    Ok(list
        .iter()
        .map(|&p| Prime::new(p))
        .collect::<Result<_, _>>()?)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn emit(out: &Output, bytes: &[u8]) -> Result<ExitCode, CliError> {
    match &out.output {
        Some(path) => fs::write(path, bytes).map_err(|e| CliError::Io(path.clone(), e))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_document(out: &Output, doc: &LocusDocument) -> Result<ExitCode, CliError> {
    match out.format.figure() {
        None => emit(out, doc.to_json().as_bytes()),
        Some(f) => emit(out, &render::render_eq_locus(doc, f)?),
    }
}

fn normal_locus(args: NormalArgs, kind: LocusKind) -> Result<ExitCode, CliError> {
    let l = load(&args.common)?;
    let n = selector::resolve(l.spectrum.lattice(), &l.labels, &args.normal, Want::Normal)?;
    let locus = match kind {
        LocusKind::Inflation => inflation_locus(&l.spectrum, n)?,
        LocusKind::GeometricFixedPoints => geometric_fixed_locus(&l.spectrum, n)?,
        LocusKind::NFree => n_free_locus(&l.spectrum, n)?,
        LocusKind::OrbitSupport => unreachable!("orbit supports take a subgroup"),
    };
    let mut doc = LocusDocument::from_locus(&locus, &l.name, kind).with_normal(l.labels[n].clone());
    if kind == LocusKind::GeometricFixedPoints {
        doc = doc.with_ambient(&containing_classes(&l.spectrum, n)?);
    }
    emit_document(&args.common.out, &doc)
}

fn support(args: SubgroupArgs) -> Result<ExitCode, CliError> {
    let l = load(&args.common)?;
    let h = selector::resolve(l.spectrum.lattice(), &l.labels, &args.subgroup, Want::Any)?;
    let locus = orbit_support(&l.spectrum, h);
    let doc = LocusDocument::from_locus(&locus, &l.name, LocusKind::OrbitSupport)
        .with_subgroup(l.labels[h].clone());
    emit_document(&args.common.out, &doc)
}

fn absfix(args: SubgroupArgs) -> Result<ExitCode, CliError> {
    let l = load(&args.common)?;
    let h = selector::resolve(l.spectrum.lattice(), &l.labels, &args.subgroup, Want::Any)?;
    let lattice = l.spectrum.lattice();
    let z = absolute_geometric_fixed_locus(lattice.group(), lattice.class(h).representative());
    match args.common.out.format.figure() {
        None => emit(&args.common.out, chromatic_json(&z).as_bytes()),
        Some(f) => {
            let space = ChromaticSpace::new(l.spectrum.primes());
            let title = format!(
                "Absolute geometric fixed points for G = {}, H = {}",
                l.name, l.labels[h]
            );
            emit(
                &args.common.out,
                &render::render_chromatic(&title, &space, &z, None, f),
            )
        }
    }
}

fn chromatic_json(z: &ChromaticSubset) -> String {
    let mut s = serde_json::to_string_pretty(z).expect("chromatic subsets serialize");
    s.push('\n');
    s
}

fn localize(args: LocalizeArgs) -> Result<ExitCode, CliError> {
    if args.sh {
        return localize_sh(&args);
    }
    let path = args
        .poset
        .as_deref()
        .expect("clap requires --poset without --sh");
    let poset = FinitePoset::parse(&read(path)?)?;
    let y = match (&args.closed, &args.y) {
        (Some(names), _) => PosetSubset::by_names(
            &poset,
            names.iter().map(String::as_str).filter(|n| !n.is_empty()),
            locus_core::space::Flavor::Arbitrary,
        )?,
        (None, Some(file)) => {
            let doc: SubsetDocument =
                serde_json::from_str(&read(file)?).map_err(|e| Error::Document(e.to_string()))?;
            doc.to_subset(&poset)?
        }
        (None, None) => PosetSubset::arbitrary(&poset, [])?,
    };
    let z = finite_localization_locus(&poset, &y)?;
    let closed_y = PosetSubset::closed(&poset, y.members().iter().copied())?;
    eprintln!(
        "{} points, |Y| = {}, |Z| = {}, Y clopen: {}",
        poset.len(),
        y.members().len(),
        z.members().len(),
        is_clopen(&poset, &closed_y)
    );
    match args.out.format.figure() {
        None => {
            let mut s =
                serde_json::to_string_pretty(&z.to_document(&poset)).expect("documents serialize");
            s.push('\n');
            emit(&args.out, s.as_bytes())
        }
        Some(f) => {
            let v = PosetSubset::arbitrary(&poset, y.complement(&poset))?;
            emit(&args.out, &render::render_poset(&poset, &[&z, &v], f)?)
        }
    }
}

fn localize_sh(args: &LocalizeArgs) -> Result<ExitCode, CliError> {
    let mut listed = primes(&args.primes)?;
    let y = match (args.invert_at, &args.y) {
        (Some(p), _) => {
            let p = Prime::new(p)?;
            listed.push(p);
            ChromaticSubset::away_from(p)
        }
        (None, Some(file)) => {
            serde_json::from_str(&read(file)?).map_err(|e| Error::Document(e.to_string()))?
        }
        (None, None) => {
            return Err(CliError::Usage(
                "--sh needs --invert-at P or --y FILE".into(),
            ))
        }
    };
    let space = ChromaticSpace::new(listed);
    let z = sh_localization_locus(&space, &y)?;
    let tags: Vec<String> = space.primes().iter().map(ToString::to_string).collect();
    eprintln!(
        "SH: primes {}, generic point in locus: {}",
        tags.join(","),
        z.includes_generic()
    );
    match args.out.format.figure() {
        None => emit(&args.out, chromatic_json(&z).as_bytes()),
        Some(f) => {
            let title = match args.invert_at {
                Some(p) => format!("Localization inverting {p}"),
                None => "Finite localization of SH".to_string(),
            };
            let fig = FigureLayout::from_chromatic_localization(&title, &space, &y, &z);
            emit(&args.out, &fig.render(f))
        }
    }
}

fn verify_cmd(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let mut config = VerifyConfig {
        max_order: args.max_order,
        poset_count: args.posets,
        seed: args.seed,
        corrupt_fixture: args.corrupt_fixture,
        ..VerifyConfig::default()
    };
    if let Some(t) = args.threads {
        config.threads = t;
    }
    let report = verify::run(&config)?;
    print!("{}", report.table());
    let passed = report.all_passed();
    eprintln!(
        "verify: {} groups with |G| <= {}, {} posets: {}",
        report.groups,
        config.max_order,
        config.poset_count,
        if passed { "all passed" } else { "FAILED" }
    );
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
