use clap::{Args, Parser, Subcommand, ValueEnum};
use domino_core::cells::{predicted_left_cells, CellModule, Cells};
use domino_core::isotypic::{
    c6_reproduction, check_equivariance, check_transfer, verify_isotypic, C6Report, Context, CycleFamily,
    EquivarianceReport, IsotypicVerification, TransferReport,
};
use domino_core::kl::{cache_dir_from_env, KlLimits, KlTable, DEFAULT_MAX_RANK};
use domino_core::operators::{apply_sequence, parse_sequence, OperatorOptions};
use domino_core::orbit::{campaign, CampaignReport, OperatorFamily};
use domino_core::par::Exec;
use domino_core::reps::CharacterTable;
use domino_core::weyl::Side;
use domino_core::{rs, DominoError, Kind, Shape, SignedPerm, Tableau, TableauPair};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(name = "domino", version, about = "Domino tableaux, cells and isotypic bases for the hyperoctahedral group")]
struct Cli {
    /// Worker threads for campaign loops; 1 runs sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Domino tableaux of a shape.
    #[command(subcommand)]
    Tableaux(TableauxCmd),
    /// The domino Robinson-Schensted correspondence.
    #[command(subcommand)]
    Rs(RsCmd),
    /// Tableau operators.
    #[command(subcommand)]
    Op(OpCmd),
    /// Orbit campaigns.
    #[command(subcommand)]
    Orbit(OrbitCmd),
    /// Kazhdan-Lusztig polynomials and cells.
    #[command(subcommand)]
    Cells(CellsCmd),
    /// Cell intersections and isotypic vectors.
    #[command(subcommand)]
    Isotypic(IsotypicCmd),
    /// Draw a tableau or a tableau pair.
    Render(RenderArgs),
}

#[derive(Subcommand)]
enum TableauxCmd {
    Enumerate {
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        shape: Shape,
        /// One JSON object per line instead of drawings.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum RsCmd {
    Insert {
        #[arg(long)]
        kind: Kind,
        /// Signed permutation in one-line form, e.g. "3,-1,2".
        #[arg(long)]
        word: SignedPerm,
    },
    Extract {
        /// File holding a pair as JSON; `-` reads standard input.
        #[arg(long)]
        pair: PathBuf,
    },
}

#[derive(Subcommand)]
enum OpCmd {
    Apply {
        /// Comma-separated operator literals, applied left to right, e.g. "T:2,3,UL:fwd".
        #[arg(long)]
        ops: String,
        #[arg(long)]
        pair: PathBuf,
        #[command(flatten)]
        options: OpFlags,
    },
}

#[derive(Args, Clone, Copy)]
struct OpFlags {
    /// S operators accept only the canonical prefix filling.
    #[arg(long)]
    strict_s: bool,
    /// Enlarged operators read the recipe's cycle subscripts literally.
    #[arg(long)]
    literal_enlarged: bool,
    /// U acts by the box or hook recipe alone.
    #[arg(long)]
    u_recipe_only: bool,
}

impl From<OpFlags> for OperatorOptions {
    fn from(f: OpFlags) -> OperatorOptions {
        OperatorOptions { strict_s: f.strict_s, literal_enlarged: f.literal_enlarged, u_recipe_only: f.u_recipe_only }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Exclude {
    SFamily,
    SameLength,
    DiffLength,
}

#[derive(Args)]
struct Budget {
    /// Stop after this many seconds and report the run as incomplete.
    #[arg(long)]
    timeout_secs: Option<u64>,
}

impl Budget {
    fn deadline(&self) -> Option<Instant> {
        self.timeout_secs.map(|s| Instant::now() + Duration::from_secs(s))
    }
}

#[derive(Subcommand)]
enum OrbitCmd {
    Check {
        #[arg(long)]
        kind: Kind,
        #[arg(long, default_value_t = 6)]
        max_rank: usize,
        #[arg(long, value_enum)]
        exclude: Vec<Exclude>,
        /// Check a single shape instead of every shape up to `--max-rank`.
        #[arg(long)]
        shape: Option<Shape>,
        #[arg(long)]
        json_report: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        options: OpFlags,
    },
}

#[derive(Args)]
struct RankArgs {
    /// A single rank.
    #[arg(long, conflicts_with = "max_rank")]
    rank: Option<usize>,
    /// Every rank from 1 up to this one.
    #[arg(long)]
    max_rank: Option<usize>,
    /// Permit Kazhdan-Lusztig tables above rank 4.
    #[arg(long)]
    allow_large: bool,
    #[command(flatten)]
    budget: Budget,
}

impl RankArgs {
    fn ranks(&self) -> Result<Vec<usize>, Failure> {
        let ranks: Vec<usize> = match (self.rank, self.max_rank) {
            (Some(r), _) => vec![r],
            (None, Some(m)) => (1..=m).collect(),
            (None, None) => vec![3],
        };
        if ranks.contains(&0) {
            return Err(Failure::Usage("ranks start at 1".into()));
        }
        if !self.allow_large && ranks.iter().any(|&r| r > DEFAULT_MAX_RANK) {
            return Err(Failure::Usage(format!("ranks above {DEFAULT_MAX_RANK} need --allow-large")));
        }
        Ok(ranks)
    }

    fn limits(&self, exec: Exec) -> KlLimits {
        KlLimits {
            allow_large: self.allow_large,
            deadline: self.budget.deadline(),
            exec: Some(exec),
            max_polys: self.allow_large.then_some(LARGE_POLY_BUDGET),
        }
    }
}

/// About 2.5 GB of stored polynomials.
const LARGE_POLY_BUDGET: usize = 30_000_000;

#[derive(Subcommand)]
enum CellsCmd {
    Compute {
        #[command(flatten)]
        ranks: RankArgs,
        #[arg(long)]
        json_report: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum IsotypicCmd {
    /// Isotypic generators on every cell intersection, with operator equivariance and transfer.
    Verify {
        #[arg(long, default_value = "C")]
        kind: Kind,
        #[command(flatten)]
        ranks: RankArgs,
        #[arg(long)]
        json_report: Option<PathBuf>,
    },
    /// The sign-rule vector `R_σ` on the intersection containing an element.
    Rsigma {
        #[arg(long, default_value = "C")]
        kind: Kind,
        /// Signed permutation in one-line form.
        #[arg(long)]
        element: SignedPerm,
        #[arg(long)]
        sigma: Shape,
        #[arg(long)]
        json_report: Option<PathBuf>,
    },
    /// The rank-6 example: combinatorial part, and the full check with `--allow-large`.
    C6 {
        #[arg(long)]
        allow_large: bool,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        json_report: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long, conflicts_with_all = ["pair", "word"])]
    tableau: Option<PathBuf>,
    #[arg(long, conflicts_with = "word")]
    pair: Option<PathBuf>,
    /// Render the pair inserted from this signed permutation.
    #[arg(long, requires = "kind")]
    word: Option<SignedPerm>,
    #[arg(long)]
    kind: Option<Kind>,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<DominoError> for Failure {
    fn from(e: DominoError) -> Failure {
        match e {
            DominoError::Limit(m) => Failure::Verification(format!("incomplete: {m}")),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    text.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_pair(path: &Path) -> Result<TableauPair, Failure> {
    Ok(TableauPair::from_json(&read_input(path)?)?)
}

fn write_report<T: Serialize>(path: Option<&PathBuf>, report: &T) -> Result<(), Failure> {
    if let Some(path) = path {
        let mut text = serde_json::to_string_pretty(report).expect("serializable report");
        text.push('\n');
        std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn tableaux(cmd: TableauxCmd) -> Outcome {
    let TableauxCmd::Enumerate { kind, shape, json } = cmd;
    let all = Tableau::enumerate(&shape, kind)?;
    for t in &all {
        if json {
            println!("{}", t.to_json());
        } else {
            println!("{}", t.render());
        }
    }
    if !json {
        println!("{} tableaux of shape ({shape}), kind {kind}", all.len());
    }
    Ok(true)
}

fn rs_cmd(cmd: RsCmd) -> Outcome {
    match cmd {
        RsCmd::Insert { kind, word } => println!("{}", rs::insert(&word, kind).to_json()),
        RsCmd::Extract { pair } => println!("{}", rs::extract(&read_pair(&pair)?)?),
    }
    Ok(true)
}

fn op_cmd(cmd: OpCmd) -> Outcome {
    let OpCmd::Apply { ops, pair, options } = cmd;
    let seq = parse_sequence(&ops)?;
    for image in apply_sequence(&seq, &read_pair(&pair)?, options.into()) {
        println!("{}", image.to_json());
    }
    Ok(true)
}

#[derive(Serialize)]
struct OrbitReport {
    schema: &'static str,
    campaigns: Vec<CampaignReport>,
    pass: bool,
}

fn orbit_cmd(cmd: OrbitCmd, exec: Exec) -> Outcome {
    let OrbitCmd::Check { kind, max_rank, exclude, shape, json_report, budget, options } = cmd;
    let mut family = OperatorFamily::FULL;
    for e in exclude {
        match e {
            Exclude::SFamily => family.s_family = false,
            Exclude::SameLength => family.same_length = false,
            Exclude::DiffLength => family.diff_length = false,
        }
    }
    let ranks: Vec<usize> = (1..=max_rank).collect();
    let r = campaign(kind, &ranks, shape.as_ref(), family, options.into(), exec, budget.deadline())?;
    for s in &r.shapes {
        println!("{} ({}) rank {}: {} tableaux, {} orbit(s) {:?}", verdict(s.pass), s.shape, s.rank, s.tableaux, s.orbits, s.orbit_sizes);
    }
    if !r.skipped.is_empty() {
        println!("timed out; {} shape(s) not checked", r.skipped.len());
    }
    println!("{}: kind {kind}, {} shape(s)", verdict(r.pass), r.shapes.len());
    let pass = r.pass;
    write_report(json_report.as_ref(), &OrbitReport { schema: domino_core::orbit::ORBIT_SCHEMA, campaigns: vec![r], pass })?;
    Ok(pass)
}

fn kl_table(n: usize, limits: KlLimits) -> Result<KlTable, Failure> {
    Ok(KlTable::cached(n, cache_dir_from_env().as_deref(), limits)?)
}

#[derive(Serialize)]
struct CellsRankReport {
    rank: usize,
    order: usize,
    polynomials: usize,
    inversion_identities: usize,
    inversion_failures: usize,
    left_cells: Vec<Vec<String>>,
    two_sided_cells: Vec<Vec<String>>,
    partition: bool,
    multiplicity_free: bool,
    prediction_c: bool,
    prediction_b: bool,
    pass: bool,
}

#[derive(Serialize)]
struct CellsReport {
    schema: &'static str,
    ranks: Vec<CellsRankReport>,
    pass: bool,
}

fn cells_cmd(cmd: CellsCmd, exec: Exec) -> Outcome {
    let CellsCmd::Compute { ranks, json_report } = cmd;
    let mut out = Vec::new();
    for n in ranks.ranks()? {
        let kl = kl_table(n, ranks.limits(exec))?;
        let (identities, failures) = kl.check_inversion_until(ranks.budget.deadline())?;
        let cells = Cells::compute(&kl);
        let table = CharacterTable::new(n);
        let ctx = Context::new(kl, Kind::C);
        let name = |c: &Vec<u32>| c.iter().map(|&w| ctx.kl.group.elems[w as usize].to_string()).collect::<Vec<_>>();
        let multiplicity_free = cells
            .left
            .iter()
            .all(|c| ctx.module_character(&CellModule::new(&ctx.kl, c, Side::Left)).is_ok_and(|chi| table.is_multiplicity_free(&chi)));
        let prediction_c = predicted_left_cells(&ctx.kl.group, Kind::C) == cells.left;
        let prediction_b = predicted_left_cells(&ctx.kl.group, Kind::B) == cells.left;
        let partition = cells.is_partition(ctx.kl.group.order());
        let pass = failures.is_empty() && partition && multiplicity_free && prediction_c && prediction_b;
        println!(
            "{} rank {n}: {} polynomials, {} left cells, {} two-sided cells, {} inversion failures",
            verdict(pass),
            ctx.kl.len(),
            cells.left.len(),
            cells.two_sided.len(),
            failures.len()
        );
        out.push(CellsRankReport {
            rank: n,
            order: ctx.kl.group.order(),
            polynomials: ctx.kl.len(),
            inversion_identities: identities,
            inversion_failures: failures.len(),
            left_cells: cells.left.iter().map(name).collect(),
            two_sided_cells: cells.two_sided.iter().map(name).collect(),
            partition,
            multiplicity_free,
            prediction_c,
            prediction_b,
            pass,
        });
    }
    let pass = out.iter().all(|r| r.pass);
    write_report(json_report.as_ref(), &CellsReport { schema: "domino-cells/1", ranks: out, pass })?;
    Ok(pass)
}

#[derive(Serialize)]
struct IsotypicRankReport {
    generators: IsotypicVerification,
    equivariance: EquivarianceReport,
    transfer: TransferReport,
    pass: bool,
}

#[derive(Serialize)]
struct IsotypicReport {
    schema: &'static str,
    ranks: Vec<IsotypicRankReport>,
    pass: bool,
}

#[derive(Serialize)]
struct RsigmaReport {
    schema: &'static str,
    kind: String,
    sigma: String,
    special: String,
    terms: Vec<RsigmaTerm>,
}

#[derive(Serialize)]
struct RsigmaTerm {
    element: String,
    shape: String,
    coefficient: i64,
}

fn isotypic_cmd(cmd: IsotypicCmd, exec: Exec) -> Outcome {
    match cmd {
        IsotypicCmd::Verify { kind, ranks, json_report } => {
            let mut out = Vec::new();
            for n in ranks.ranks()? {
                let ctx = Context::new(kl_table(n, ranks.limits(exec))?, kind);
                let generators = verify_isotypic(&ctx, exec);
                let equivariance = check_equivariance(&ctx);
                let transfer = check_transfer(&ctx)?;
                let pass = generators.pass
                    && equivariance.failures.is_empty()
                    && transfer.failures.is_empty()
                    && transfer.disconnected.is_empty();
                for p in generators.pairs.iter().filter(|p| !p.pass) {
                    println!("FAIL cells {} / {}: {:?}", p.left_cell, p.right_cell, p.error);
                }
                println!(
                    "{} rank {n} kind {kind}: {} cell pairs, {} equivariance checks, {} transfers",
                    verdict(pass),
                    generators.pairs.len(),
                    equivariance.checks,
                    transfer.proportional
                );
                out.push(IsotypicRankReport { generators, equivariance, transfer, pass });
            }
            let pass = out.iter().all(|r| r.pass);
            write_report(json_report.as_ref(), &IsotypicReport { schema: domino_core::isotypic::ISOTYPIC_SCHEMA, ranks: out, pass })?;
            Ok(pass)
        }
        IsotypicCmd::Rsigma { kind, element, sigma, json_report } => {
            let fam = CycleFamily::through(&rs::insert(&element, kind))?;
            let coeffs = fam.r_sigma(&sigma)?;
            let mut terms = Vec::new();
            for ((p, shape), c) in fam.members.iter().zip(&fam.shapes).zip(coeffs) {
                let w = rs::extract(p)?;
                println!("{} {w}  ({shape})", if c > 0 { '+' } else { '-' });
                terms.push(RsigmaTerm { element: w.to_string(), shape: shape.to_string(), coefficient: c });
            }
            let special = rs::extract(fam.special())?.to_string();
            let report = RsigmaReport { schema: "domino-rsigma/1", kind: kind.to_string(), sigma: sigma.to_string(), special, terms };
            write_report(json_report.as_ref(), &report)?;
            Ok(true)
        }
        IsotypicCmd::C6 { allow_large, budget, json_report } => {
            #[derive(Serialize)]
            struct Full {
                schema: &'static str,
                combinatorial: C6Report,
                full: String,
            }
            let combinatorial = c6_reproduction()?;
            for (sigma, v) in &combinatorial.vectors {
                println!("R_({sigma}) = {v:?} on (4,4,2,2), (5,3,3,1), (4,3,3,2), (5,4,2,1)");
            }
            println!("{} combinatorial part", verdict(combinatorial.pass));
            let full = if allow_large {
                let limits =
                    KlLimits { allow_large, deadline: budget.deadline(), exec: Some(exec), max_polys: Some(LARGE_POLY_BUDGET) };
                match kl_table(6, limits) {
                    Ok(kl) => verdict(verify_isotypic(&Context::new(kl, Kind::C), exec).pass).to_string(),
                    Err(Failure::Verification(m) | Failure::Usage(m)) => m,
                }
            } else {
                "not requested".to_string()
            };
            println!("full rank-6 check: {full}");
            let pass = combinatorial.pass;
            write_report(json_report.as_ref(), &Full { schema: "domino-c6/1", combinatorial, full })?;
            Ok(pass)
        }
    }
}

fn render(args: RenderArgs) -> Outcome {
    let pair = match (&args.tableau, &args.pair, &args.word, args.kind) {
        (Some(path), _, _, _) => {
            print!("{}", Tableau::from_json(&read_input(path)?)?.render());
            return Ok(true);
        }
        (_, Some(path), _, _) => read_pair(path)?,
        (_, _, Some(w), Some(kind)) => rs::insert(w, kind),
        _ => return Err(Failure::Usage("give --tableau, --pair or --word with --kind".into())),
    };
    println!("left:\n{}right:\n{}", pair.left.render(), pair.right.render());
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = match cli.threads {
        Some(0) => {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        Some(1) => Exec::Sequential,
        Some(t) => {
            Exec::configure_threads(t);
            Exec::Parallel
        }
        None => Exec::default(),
    };
    let outcome = match cli.command {
        Command::Tableaux(c) => tableaux(c),
        Command::Rs(c) => rs_cmd(c),
        Command::Op(c) => op_cmd(c),
        Command::Orbit(c) => orbit_cmd(c, exec),
        Command::Cells(c) => cells_cmd(c, exec),
        Command::Isotypic(c) => isotypic_cmd(c, exec),
        Command::Render(a) => render(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
