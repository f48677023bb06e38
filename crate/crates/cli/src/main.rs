use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::{debug, info};
use serde_json::{json, Value};

use contspec_core::figure::{line_svg, render_dot};
use contspec_core::piecewise::{LineRealization, MapError};
use contspec_core::realization::{
    build_compact_realization, build_group_realization, build_monoid_realization,
    inverses_are_continuous, pair_isomorphism, verify_composition_law, CayleyTable,
    RealizationError, Structure, Subset,
};
use contspec_core::topology::{classify_topologies, enumerate_topologies, TopologyError};
use contspec_core::{canonicalize, GeneratorSet};

#[derive(Parser)]
#[command(name = "contspec", version, about = "Realize submonoids as continuity spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Open,
    Compact,
    Monoid,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical form and member window of a generated submonoid of Z.
    Submonoid {
        /// Comma-separated generators, e.g. `3,5` or `3,-5`; empty for {0}.
        #[arg(short = 'g', long = "gens", allow_hyphen_values = true, default_value = "")]
        gens: String,
        #[arg(short = 'N', default_value_t = 10)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build the column-space realization and compute its spectrum.
    RealizeLine {
        #[arg(short = 'g', long = "gens", allow_hyphen_values = true, default_value = "")]
        gens: String,
        #[arg(short = 'N', default_value_t = 6)]
        n: u64,
        /// Built window; defaults to 2N.
        #[arg(short = 'W')]
        w: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Also write the SVG figure to this path.
        #[arg(long)]
        figure: Option<PathBuf>,
    },
    /// Enumerate topologies on n points and classify them.
    Topologies {
        #[arg(short = 'n', default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Realize a submonoid or subgroup of a finite monoid or group.
    Group {
        /// Built-in table: z1..z8, s3, d4, m2, mul2.
        #[arg(long, conflicts_with = "table", required_unless_present = "table")]
        builtin: Option<String>,
        /// Cayley table JSON file: {"size", "identity", "op", optional "names"}.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Comma-separated element names or ids.
        #[arg(long)]
        subset: String,
        #[arg(long, value_enum, default_value_t = Variant::Open)]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Window(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Window(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl From<MapError> for CliError {
    fn from(e: MapError) -> Self {
        match e {
            MapError::WindowTooSmall { .. } | MapError::WindowExhausted => {
                CliError::Window(e.to_string())
            }
            other => CliError::Verification(other.to_string()),
        }
    }
}

impl From<RealizationError> for CliError {
    fn from(e: RealizationError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<TopologyError> for CliError {
    fn from(e: TopologyError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn parse_gens(s: &str) -> Result<GeneratorSet, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| CliError::Input(format!("malformed integer {t:?}")))
        })
        .collect()
}

fn unsupported(format: Format, what: &str) -> CliError {
    let name = match format {
        Format::Dot => "dot",
        Format::Svg => "svg",
        Format::Json => "json",
        Format::Text => "text",
    };
    CliError::Input(format!("format {name} is not available for {what}"))
}

fn to_json_line(v: &Value) -> String {
    // serde_json's default map is ordered, so keys come out sorted
    serde_json::to_string_pretty(v).expect("json value") + "\n"
}

fn cmd_submonoid(gens: &str, n: u64, format: Format) -> Result<String, CliError> {
    let gens = parse_gens(gens)?;
    let s = canonicalize(&gens);
    let members = s.window(n);
    debug!("canonical form {s:?}");
    match format {
        Format::Json => Ok(to_json_line(&json!({
            "canonical": s.to_json(),
            "n": n,
            "members": members,
            "negation_closed": s.is_negation_closed(),
        }))),
        Format::Text => Ok(format!(
            "canonical: {}\nmembers in [-{n}, {n}]: {members:?}\nnegation closed: {}\n",
            s.to_json(),
            s.is_negation_closed()
        )),
        other => Err(unsupported(other, "submonoid")),
    }
}

fn cmd_realize_line(
    gens: &str,
    n: u64,
    w: Option<u64>,
    format: Format,
    figure: Option<PathBuf>,
) -> Result<String, CliError> {
    let s = canonicalize(&parse_gens(gens)?);
    let w = w.unwrap_or(2 * n).max(1);
    info!("building realization on [-{w}, {w}]");
    let real = LineRealization::new(s.clone(), w);
    let iterates = real.iterates(n)?;
    let spectrum: Vec<i64> = iterates
        .iter()
        .filter(|it| it.report.continuous)
        .map(|it| it.exponent)
        .collect();
    let expected = s.window(n);
    if let Some(path) = &figure {
        std::fs::write(path, line_svg(&real, n))
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    if spectrum != expected {
        return Err(CliError::Verification(format!(
            "spectrum {spectrum:?} differs from S ∩ [-{n}, {n}] = {expected:?}"
        )));
    }
    let out = match format {
        Format::Json => to_json_line(&json!({
            "submonoid": s.to_json(),
            "n": n,
            "w": w,
            "spectrum": spectrum,
            "matches": true,
            "iterates": iterates.iter().map(|it| json!({
                "exponent": it.exponent,
                "continuous": it.report.continuous,
                "witnesses": it.report.witnesses,
            })).collect::<Vec<_>>(),
            "space": real.space,
            "map": real.map,
        })),
        Format::Text => {
            let mut t = format!("S = {}\nspectrum on [-{n}, {n}]: {spectrum:?}\n", s.to_json());
            for it in &iterates {
                let mark = if it.report.continuous { "continuous" } else { "discontinuous" };
                let _ = write!(t, "f^{:<3} {mark}", it.exponent);
                if let Some(wt) = it.report.witnesses.first() {
                    let _ = write!(
                        t,
                        "  at ({}, {}): value ({}, {}), {:?} limit ({}, {})",
                        wt.column, wt.point, wt.value.0, wt.value.1, wt.side, wt.limit.0, wt.limit.1
                    );
                }
                t.push('\n');
            }
            t
        }
        Format::Svg => line_svg(&real, n),
        Format::Dot => {
            let r = n as i64;
            let keep = |c: i64| (-r..=r).contains(&c);
            let space = contspec_core::piecewise::ColumnSpace::new(
                real.space.columns().filter(|(c, _)| keep(*c)).map(|(c, u)| (c, u.clone())),
                Some((-r, r)),
            );
            render_dot(&space, &real.map.restrict(keep))
        }
    };
    Ok(out)
}

fn cmd_topologies(n: usize, format: Format) -> Result<String, CliError> {
    let labeled = enumerate_topologies(n)?;
    let table = classify_topologies(n)?;
    match format {
        Format::Json => Ok(to_json_line(&json!({
            "n": n,
            "labeled": labeled.len(),
            "classes": table.len(),
            "table": table,
        }))),
        Format::Text => {
            let mut t = format!("{} labeled topologies, {} classes\n", labeled.len(), table.len());
            for c in &table {
                let _ = writeln!(
                    t,
                    "{:>3}  |G| = {:<3} {:<6} {}",
                    c.class_id,
                    c.group_order,
                    c.group_type.map_or("?", |g| g.name()),
                    c.topology
                );
            }
            Ok(t)
        }
        other => Err(unsupported(other, "topologies")),
    }
}

fn load_table(builtin: Option<String>, table: Option<PathBuf>) -> Result<CayleyTable, CliError> {
    if let Some(name) = builtin {
        return CayleyTable::builtin(&name)
            .ok_or_else(|| CliError::Input(format!("unknown built-in table {name:?}")));
    }
    let path = table.ok_or_else(|| CliError::Input("need --builtin or --table".into()))?;
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let t: CayleyTable = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("bad table JSON: {e}")))?;
    if t.size != t.op.len() {
        return Err(CliError::Input(format!("size {} but {} rows", t.size, t.op.len())));
    }
    Ok(t)
}

fn cmd_group(
    builtin: Option<String>,
    table: Option<PathBuf>,
    subset: &str,
    variant: Variant,
    format: Format,
) -> Result<String, CliError> {
    let g = load_table(builtin, table)?;
    let structure = g.validate().map_err(|e| CliError::Input(format!("invalid table: {e}")))?;
    let s = Subset::parse(&g, subset)?;
    let real = match variant {
        Variant::Open => build_group_realization(&g, &s)?,
        Variant::Monoid => build_monoid_realization(&g, &s)?,
        Variant::Compact => build_compact_realization(&g, &s)?,
    };
    let spectrum = real.spectrum();
    let law = verify_composition_law(&real.family, &g);
    let bijective = real.bijective();
    let inverse_closed = structure == Structure::Group && spectrum.is_inverse_closed(&g);
    let isomorphic = real
        .family
        .realized_table(g.identity)
        .is_some_and(|a| pair_isomorphism(&g, &s, &a, &spectrum).is_some());
    if spectrum != s {
        return Err(CliError::Verification(format!(
            "spectrum {:?} differs from subset {:?}",
            spectrum.names(&g),
            s.names(&g)
        )));
    }
    if !law {
        return Err(CliError::Verification("composition law fails".into()));
    }
    if variant == Variant::Compact && !inverses_are_continuous(&real, &g) {
        return Err(CliError::Verification("a continuous map has a discontinuous inverse".into()));
    }
    let variant_name = match variant {
        Variant::Open => "open",
        Variant::Compact => "compact",
        Variant::Monoid => "monoid",
    };
    match format {
        Format::Json => Ok(to_json_line(&json!({
            "structure": structure,
            "variant": variant_name,
            "subset": s.names(&g),
            "spectrum": spectrum.names(&g),
            "matches": true,
            "composition_law": law,
            "bijective": bijective.names(&g),
            "all_bijective": bijective.len() == g.size,
            "inverse_closed": inverse_closed,
            "isomorphic_pair": isomorphic,
        }))),
        Format::Text => Ok(format!(
            "{structure:?} of order {}, {variant_name} construction\nsubset:   {:?}\nspectrum: {:?}\ncomposition law: {law}\nbijective maps: {:?}\n",
            g.size,
            s.names(&g),
            spectrum.names(&g),
            bijective.names(&g)
        )),
        other => Err(unsupported(other, "group")),
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Submonoid { gens, n, format } => cmd_submonoid(&gens, n, format),
        Command::RealizeLine {
            gens,
            n,
            w,
            format,
            figure,
        } => cmd_realize_line(&gens, n, w, format, figure),
        Command::Topologies { n, format } => cmd_topologies(n, format),
        Command::Group {
            builtin,
            table,
            subset,
            variant,
            format,
        } => cmd_group(builtin, table, &subset, variant, format),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("CONTSPEC_LOG")).init();
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
