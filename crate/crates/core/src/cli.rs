//! Command-line frontend.
//!
//! Data goes to standard output or `--out`; diagnostics go to standard
//! error. Exit status is 0 on success, 1 when `validate` finds violations
//! and 2 on usage or data errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::corpus::{load_corpus, Corpus, LoadOptions};
use crate::error::{Error, Result};
use crate::metrics::{Decomposition, ProfileParams};
use crate::reports::{self, Format, Level, MaximaMode, MaximaParams, RenderOptions, ReportTable, ThresholdParams};
use crate::scheme::{load_scheme_named, validate_scheme, FieldScheme, Severity};
use crate::synth::{self, SynthParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "interdisc", version, about = "Interdisciplinary collaboration indicators from co-author field classifications")]
pub struct Cli {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Directory holding scheme.csv, researchers.csv, publications.csv and authorships.csv.
    #[arg(long, global = true, value_name = "DIR")]
    pub data: Option<PathBuf>,
    #[arg(long, global = true, value_name = "FILE")]
    pub scheme: Option<PathBuf>,
    #[arg(long, global = true, value_name = "FILE")]
    pub researchers: Option<PathBuf>,
    #[arg(long, global = true, value_name = "FILE")]
    pub publications: Option<PathBuf>,
    #[arg(long, global = true, value_name = "FILE")]
    pub authorships: Option<PathBuf>,
    /// Inclusive publication year window, e.g. 2001:2003.
    #[arg(long, global = true, value_name = "A:B", value_parser = parse_years)]
    pub years: Option<RangeInclusive<i32>>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Write to this file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Add full-precision `<column>_raw` columns (CSV only).
    #[arg(long, global = true)]
    pub raw: bool,
    /// Emit the title and the parameters used.
    #[arg(long, global = true)]
    pub provenance: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Discipline,
    Field,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Overall,
    CrossDiscipline,
}

#[derive(Debug, Args)]
pub struct PartnerArgs {
    /// Partners with incidence below this are left out of partner counts.
    #[arg(long, default_value_t = 0.01, value_parser = parse_ratio)]
    pub omit_below: f64,
    /// Partners with incidence strictly above this count as strong partners.
    #[arg(long, default_value_t = 0.10, value_parser = parse_ratio)]
    pub partner_threshold: f64,
    /// Count a publication with both same- and other-discipline partners as intra-discipline.
    #[arg(long)]
    pub intra_first: bool,
}

impl PartnerArgs {
    fn params(&self) -> ProfileParams {
        ProfileParams {
            partner_threshold: self.partner_threshold,
            omit_below: self.omit_below,
            decomposition: if self.intra_first {
                Decomposition::IntraDisciplineFirst
            } else {
                Decomposition::CrossDisciplineFirst
            },
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the scheme and, when given, the corpus links.
    Validate,
    /// Staff, publications and cross-discipline shares per discipline.
    Summary,
    /// Pair incidences between disciplines, or every realized field pair.
    Pairs {
        #[arg(long, value_enum, default_value_t = LevelArg::Discipline)]
        level: LevelArg,
    },
    /// Profile of a field, or of every field in a discipline.
    Profile {
        /// Field or discipline code.
        code: String,
        /// List the field's strongest partners instead of its profile.
        #[arg(long)]
        ranking: bool,
        #[arg(long, default_value_t = 20)]
        top: usize,
        /// Keep only fields with more researchers than this (discipline profiles).
        #[arg(long)]
        min_headcount: Option<u64>,
        #[command(flatten)]
        partners: PartnerArgs,
    },
    /// Field with the highest interdisciplinarity in each discipline.
    Maxima {
        #[arg(long, value_enum, default_value_t = ModeArg::Overall)]
        mode: ModeArg,
        /// Consider only fields with more researchers than this.
        #[arg(long)]
        min_headcount: Option<u64>,
        /// Disciplines the headcount floor applies to (default: all).
        #[arg(long, value_delimiter = ',', requires = "min_headcount")]
        headcount_disciplines: Vec<String>,
        #[command(flatten)]
        partners: PartnerArgs,
    },
    /// Directed field pairs whose incidence exceeds a threshold.
    Annex {
        #[arg(long, default_value_t = 0.10, value_parser = parse_ratio)]
        min_d: f64,
        #[arg(long)]
        cross_only: bool,
        #[arg(long, default_value_t = 100)]
        min_first_pubs: u64,
    },
    /// Rank correlation between headcount and general degree in a discipline.
    Correlate {
        discipline: String,
        #[arg(long, default_value_t = 100)]
        min_headcount: u64,
    },
    /// Weighted co-occurrence edge list (from,to,joint,d,e,avg).
    Graph {
        #[arg(long, value_enum, default_value_t = LevelArg::Field)]
        level: LevelArg,
        #[arg(long, default_value_t = 1)]
        min_joint: u64,
    },
    /// Generate a synthetic corpus as four CSV files.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Output directory.
    #[arg(long = "dir", value_name = "DIR")]
    pub dir: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub disciplines: usize,
    #[arg(long, default_value_t = 4)]
    pub fields_per_discipline: usize,
    #[arg(long, default_value = "5:40", value_parser = parse_count_range)]
    pub researchers_per_field: RangeInclusive<usize>,
    /// Number of publications.
    #[arg(long, default_value_t = 500)]
    pub pubs: usize,
    #[arg(long, default_value = "1:5", value_parser = parse_count_range)]
    pub authors_per_pub: RangeInclusive<usize>,
    #[arg(long, default_value_t = 0.4)]
    pub p_cross_field: f64,
    #[arg(long, default_value_t = 0.3)]
    pub p_cross_discipline: f64,
    #[arg(long, default_value_t = 1.0)]
    pub inverse_size_bias: f64,
    #[arg(long, default_value_t = 10)]
    pub universities: usize,
}

impl SynthArgs {
    fn params(&self) -> SynthParams {
        SynthParams {
            seed: self.seed,
            disciplines: self.disciplines,
            fields_per_discipline: self.fields_per_discipline,
            researchers_per_field: self.researchers_per_field.clone(),
            publications: self.pubs,
            authors_per_pub: self.authors_per_pub.clone(),
            p_cross_field: self.p_cross_field,
            p_cross_discipline: self.p_cross_discipline,
            inverse_size_bias: self.inverse_size_bias,
            universities: self.universities,
        }
    }
}

fn parse_years(s: &str) -> std::result::Result<RangeInclusive<i32>, String> {
    let (a, b) = s.split_once(':').ok_or("expected A:B")?;
    let a: i32 = a.trim().parse().map_err(|_| format!("invalid year '{a}'"))?;
    let b: i32 = b.trim().parse().map_err(|_| format!("invalid year '{b}'"))?;
    if a > b {
        return Err(format!("empty year range {a}:{b}"));
    }
    Ok(a..=b)
}

fn parse_count_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let (a, b) = s.split_once(':').unwrap_or((s, s));
    let a: usize = a.trim().parse().map_err(|_| format!("invalid count '{a}'"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("invalid count '{b}'"))?;
    Ok(a..=b)
}

fn parse_ratio(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("invalid ratio '{s}'"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("ratio must be within [0, 1], got {v}"))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn resolve(explicit: &Option<PathBuf>, data: &Option<PathBuf>, name: &str) -> Option<PathBuf> {
    explicit.clone().or_else(|| data.as_ref().map(|d| d.join(name)))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

impl InputArgs {
    fn scheme(&self) -> Result<FieldScheme> {
        let path = resolve(&self.scheme, &self.data, "scheme.csv")
            .ok_or_else(|| Error::Params("no scheme given (use --scheme or --data)".into()))?;
        load_scheme_named(open(&path)?, &path.display().to_string())
    }

    fn corpus_paths(&self) -> Option<Result<[PathBuf; 3]>> {
        let paths = [
            resolve(&self.researchers, &self.data, "researchers.csv"),
            resolve(&self.publications, &self.data, "publications.csv"),
            resolve(&self.authorships, &self.data, "authorships.csv"),
        ];
        if paths.iter().all(Option::is_none) {
            return None;
        }
        match paths {
            [Some(r), Some(p), Some(a)] => Some(Ok([r, p, a])),
            _ => Some(Err(Error::Params(
                "--researchers, --publications and --authorships must be given together".into(),
            ))),
        }
    }

    fn load(&self, scheme: FieldScheme, paths: &[PathBuf; 3]) -> Result<Corpus> {
        let options = LoadOptions {
            years: self.years.clone(),
        };
        load_corpus(scheme, open(&paths[0])?, open(&paths[1])?, open(&paths[2])?, &options)
    }

    fn corpus(&self) -> Result<Corpus> {
        let scheme = self.scheme()?;
        let paths = self
            .corpus_paths()
            .unwrap_or_else(|| Err(Error::Params("no corpus given (use --data or the three file flags)".into())))?;
        let corpus = self.load(scheme, &paths)?;
        let report = corpus.link_report();
        if report.unmatched + report.empty_pubs + report.duplicates > 0 {
            log::warn!(
                "linking: {} unmatched authorships, {} publications without matched authors, {} duplicate authorships",
                report.unmatched,
                report.empty_pubs,
                report.duplicates
            );
        }
        Ok(corpus)
    }
}

impl OutputArgs {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text)?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
            }
        }
        Ok(())
    }

    fn table(&self, table: &ReportTable) -> Result<()> {
        let format = match self.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Markdown => Format::Markdown,
        };
        let options = RenderOptions {
            raw: self.raw,
            provenance: self.provenance,
        };
        self.emit(&reports::render(table, format, &options))
    }
}

fn level(l: LevelArg) -> Level {
    match l {
        LevelArg::Discipline => Level::Discipline,
        LevelArg::Field => Level::Field,
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let out = &cli.output;
    match &cli.command {
        Command::Validate => validate(&cli.input, out),
        Command::Summary => {
            out.table(&reports::discipline_summary_table(&cli.input.corpus()?))?;
            Ok(EXIT_OK)
        }
        Command::Pairs { level: l } => {
            let corpus = cli.input.corpus()?;
            let t = match l {
                LevelArg::Discipline => reports::discipline_pair_table(&corpus),
                LevelArg::Field => reports::field_pair_table(&corpus),
            };
            out.table(&t)?;
            Ok(EXIT_OK)
        }
        Command::Profile {
            code,
            ranking,
            top,
            min_headcount,
            partners,
        } => {
            let corpus = cli.input.corpus()?;
            let scheme = corpus.scheme();
            let t = if *ranking {
                reports::field_pair_ranking(&corpus, code, *top)?
            } else if scheme.field_id(code).is_ok() {
                reports::field_profile_table(&corpus, code, &partners.params())?
            } else if scheme.discipline_id(code).is_ok() {
                reports::discipline_profile_table(&corpus, code, &partners.params(), *min_headcount)?
            } else {
                return Err(Error::UnknownField(code.clone()));
            };
            out.table(&t)?;
            Ok(EXIT_OK)
        }
        Command::Maxima {
            mode,
            min_headcount,
            headcount_disciplines,
            partners,
        } => {
            let corpus = cli.input.corpus()?;
            for d in headcount_disciplines {
                corpus.scheme().discipline_id(d)?;
            }
            let params = MaximaParams {
                mode: match mode {
                    ModeArg::Overall => MaximaMode::Overall,
                    ModeArg::CrossDiscipline => MaximaMode::CrossDiscipline,
                },
                omit_below: partners.omit_below,
                partner_threshold: partners.partner_threshold,
                min_headcount: *min_headcount,
                headcount_disciplines: headcount_disciplines.clone(),
            };
            out.table(&reports::max_interdisciplinarity_report(&corpus, &params))?;
            Ok(EXIT_OK)
        }
        Command::Annex {
            min_d,
            cross_only,
            min_first_pubs,
        } => {
            let corpus = cli.input.corpus()?;
            let params = ThresholdParams {
                min_d: *min_d,
                cross_discipline_only: *cross_only,
                min_first_pubs: *min_first_pubs,
            };
            out.table(&reports::threshold_pair_list(&corpus, &params))?;
            Ok(EXIT_OK)
        }
        Command::Correlate {
            discipline,
            min_headcount,
        } => {
            let corpus = cli.input.corpus()?;
            out.table(&reports::correlation_table(&corpus, discipline, *min_headcount)?)?;
            Ok(EXIT_OK)
        }
        Command::Graph { level: l, min_joint } => {
            let corpus = cli.input.corpus()?;
            out.emit(&reports::export_graph(&corpus, level(*l), *min_joint))?;
            Ok(EXIT_OK)
        }
        Command::Synth(args) => {
            let (corpus, _) = synth::generate(&args.params())?;
            synth::write_corpus_dir(&corpus, &args.dir)?;
            eprintln!(
                "wrote {} researchers, {} publications to {}",
                corpus.researchers().len(),
                corpus.publications().len(),
                args.dir.display()
            );
            Ok(EXIT_OK)
        }
    }
}

fn validate(input: &InputArgs, out: &OutputArgs) -> Result<i32> {
    let scheme = input.scheme()?;
    let violations = validate_scheme(&scheme);
    let mut text = String::new();
    for v in &violations {
        eprintln!("{v}");
    }
    let errors = violations.iter().filter(|v| v.severity == Severity::Error).count();
    text.push_str(&format!(
        "scheme.fields={}\nscheme.disciplines={}\nscheme.errors={errors}\nscheme.warnings={}\n",
        scheme.fields().len(),
        scheme.disciplines().len(),
        violations.len() - errors
    ));
    let mut status = if violations.is_empty() { EXIT_OK } else { EXIT_VIOLATIONS };
    if let Some(paths) = input.corpus_paths() {
        let corpus = input.load(scheme, &paths?)?;
        let report = corpus.link_report();
        text.push_str(&format!(
            "corpus.researchers={}\ncorpus.publications={}\n{report}\n",
            corpus.researchers().len(),
            corpus.publications().len()
        ));
        if report.unmatched + report.empty_pubs > 0 {
            status = EXIT_VIOLATIONS;
        }
    }
    out.emit(&text)?;
    Ok(status)
}
