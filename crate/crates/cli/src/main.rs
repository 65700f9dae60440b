use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use dimerlab::contraction::{
    contract_by_names, is_cyclic, reduce_removable_two_cycles, source_corners, ContractionMap,
};
use dimerlab::matchings::{
    classify_two_cycles, enumerate_perfect_matchings, is_cancellative, is_nondegenerate, simple_matchings,
    MatchingFamily,
};
use dimerlab::monoid::{cross_check_corner, Bounds, MonoidDescription};
use dimerlab::path_algebra::{find_non_cancellative_pairs, monomial_string, DimerAlgebra, PairSearch, Path};
use dimerlab::quiver::validate;
use dimerlab::render::{render, Overlay};
use dimerlab::report::Report;
use dimerlab::representations::{build_representation, is_simple};
use dimerlab::{fixtures, io, DimerQuiver, Error, Rational, RationalPoint};

#[derive(Parser)]
#[command(
    name = "dimerlab",
    version,
    about = "Exact computations for dimer quivers on the torus"
)]
struct Cli {
    /// Print only the tab-separated machine lines.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BoundArgs {
    #[arg(long, default_value_t = 8)]
    degree_bound: u32,
    /// Box for the enumerated-cycle saturation check.
    #[arg(long = "box", default_value_t = 3)]
    box_size: i64,
    #[arg(long, default_value_t = 12)]
    max_len: usize,
}

impl BoundArgs {
    fn bounds(self) -> Bounds {
        Bounds {
            degree_bound: self.degree_bound,
            box_size: self.box_size,
            max_len: self.max_len,
            ..Bounds::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the dimer conditions.
    Validate { file: String },
    /// List perfect matchings.
    Matchings { file: String },
    /// List simple matchings.
    Simple { file: String },
    /// Decide cancellativity from simple-matching coverage.
    Cancellative { file: String },
    /// Search for non-cancellative pairs among bounded paths.
    Pairs {
        file: String,
        #[arg(long)]
        max_len: usize,
        /// Stop after this many pairs.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Contract arrows and write the target quiver.
    Contract {
        file: String,
        #[arg(long, value_delimiter = ',', required = true)]
        arrows: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long = "reduce-2cycles")]
        reduce: bool,
    },
    /// Decide whether a contraction is cyclic, up to a degree bound.
    CheckCyclic {
        file: String,
        /// Comma-separated arrow names.
        arrows: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Minimal generators of the cycle algebra.
    CycleAlgebra {
        file: String,
        /// Label through this contraction instead of the quiver's own simple matchings.
        #[arg(long, value_delimiter = ',')]
        arrows: Vec<String>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Minimal generators of the center.
    Center {
        file: String,
        #[arg(long, value_delimiter = ',')]
        arrows: Vec<String>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Representation at a point: a fixture map name or `<file>@a,b`.
    Rep {
        mapspec: String,
        /// `name=rational` pairs, one per simple matching of the target.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<String>,
    },
    /// Draw the fundamental domain as SVG.
    Render {
        file: String,
        #[arg(long)]
        out: PathBuf,
        /// Highlight these arrows as contracted.
        #[arg(long, value_delimiter = ',')]
        contracted: Vec<String>,
        /// Highlight a perfect matching by name (`p<k>` or `m<k>`).
        #[arg(long)]
        matching: Option<String>,
        /// Highlight a path given as arrow names in traversal order.
        #[arg(long)]
        path: Option<String>,
    },
    /// List or print built-in fixtures.
    Fixtures {
        #[arg(long, conflicts_with = "emit")]
        list: bool,
        #[arg(long)]
        emit: Option<String>,
    },
}

/// An answer that is reported with a nonzero exit code.
struct Outcome {
    report: Report,
    code: u8,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, code: 0 }
    }
}

fn load(arg: &str) -> anyhow::Result<DimerQuiver> {
    let text = if FsPath::new(arg).is_file() {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    } else {
        fixtures::text(arg)
            .map_err(|_| anyhow!("no file or fixture named {arg}"))?
            .to_string()
    };
    Ok(io::parse(&text)?)
}

fn load_valid(arg: &str) -> anyhow::Result<DimerQuiver> {
    let q = load(arg)?;
    let report = validate(&q);
    if !report.is_valid() {
        return Err(Error::InvalidQuiver(report).into());
    }
    Ok(q)
}

fn load_map(file: &str, arrows: &[String]) -> anyhow::Result<ContractionMap> {
    let q = load_valid(file)?;
    Ok(contract_by_names(&q, arrows.iter().map(String::as_str))?)
}

fn split_names(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(String::from)
        .collect()
}

fn list_family(r: &mut Report, q: &DimerQuiver, fam: &MatchingFamily, key: &str) {
    r.both(key, fam.len());
    for (name, d) in fam.iter() {
        r.line(format!("  {name}: {}", d.display(q)));
        r.field(&format!("matching.{name}"), d.display(q));
    }
}

fn monoid_lines(r: &mut Report, what: &str, m: &MonoidDescription, names: &[String]) {
    let d = m.degree_bound();
    let gens = m.minimal_generators();
    r.line(format!("{what} (up to degree {d}): {}", m.display_generators(names)));
    r.field(&format!("{what}.degree_bound"), d);
    r.field(&format!("{what}.generators"), gens.len());
    for (k, g) in gens.iter().enumerate() {
        r.field(&format!("{what}.generator.{k}"), monomial_string(g, names));
    }
    let counts = m.counts_by_degree();
    r.line(format!(
        "  monomials by degree: {}",
        counts.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    ));
    for (k, c) in counts.iter().enumerate() {
        r.field(&format!("{what}.count.{k}"), c);
    }
}

/// Cycle algebra or center, labeled by the simple matchings of the target
/// of `arrows` (the quiver itself when no arrows are given).
fn monoid_command(
    mut r: Report,
    file: &str,
    arrows: &[String],
    bounds: Bounds,
    center: bool,
) -> anyhow::Result<Outcome> {
    let m = load_map(file, arrows)?;
    let summary = source_corners(&m, &bounds)?;
    let names = m.target_simple_matchings().names().to_vec();
    r.field("degree_bound", bounds.degree_bound)
        .field("box", bounds.box_size)
        .field("max_len", bounds.max_len)
        .both("variables", names.join(","));
    if center {
        monoid_lines(&mut r, "center", &summary.center, &names);
    } else {
        monoid_lines(&mut r, "cycle_algebra", &summary.cycle_algebra, &names);
    }
    let labeler = m.tau_psi_labeler();
    let mut stable = true;
    for c in &summary.corners {
        stable &= cross_check_corner(m.source(), &labeler, c, &bounds)?.saturated();
    }
    r.line(format!(
        "saturation: {}",
        if stable { "stable" } else { "unsaturated at bound" }
    ));
    r.field("saturated", if stable { "yes" } else { "no" });
    Ok(Outcome {
        report: r,
        code: if stable { 0 } else { 3 },
    })
}

fn run(cmd: Command) -> anyhow::Result<Outcome> {
    let mut r = Report::new();
    match cmd {
        Command::Validate { file } => {
            let q = load(&file)?;
            let report = validate(&q);
            r.field("vertices", q.vertex_count())
                .field("arrows", q.arrow_count())
                .field("faces", q.face_count());
            if !report.is_valid() {
                return Err(Error::InvalidQuiver(report).into());
            }
            r.line(format!(
                "valid: {} vertices, {} arrows, {} faces",
                q.vertex_count(),
                q.arrow_count(),
                q.face_count()
            ));
            r.field("valid", "yes");
            for (face, kind) in classify_two_cycles(&q) {
                r.line(format!("2-cycle at face {face}: {kind:?}"));
                r.field(&format!("two_cycle.{face}"), format!("{kind:?}"));
            }
        }
        Command::Matchings { file } => {
            let q = load_valid(&file)?;
            list_family(&mut r, &q, &enumerate_perfect_matchings(&q), "perfect_matchings");
            r.both("nondegenerate", if is_nondegenerate(&q) { "yes" } else { "no" });
        }
        Command::Simple { file } => {
            let q = load_valid(&file)?;
            list_family(&mut r, &q, &simple_matchings(&q), "simple_matchings");
        }
        Command::Cancellative { file } => {
            let q = load_valid(&file)?;
            let c = is_cancellative(&q);
            let uncovered: Vec<&str> = c.uncovered.iter().map(|&a| q.arrow_name(a)).collect();
            if c.cancellative {
                r.line("cancellative");
            } else {
                r.line(format!("non-cancellative; uncovered arrows: {}", uncovered.join(", ")));
            }
            r.field("cancellative", if c.cancellative { "yes" } else { "no" })
                .field("uncovered", uncovered.join(","))
                .both("simple_matchings", c.simple_matchings);
            let nondeg = is_nondegenerate(&q);
            r.line(if nondeg {
                "nondegenerate"
            } else {
                "degenerate: some arrow lies in no perfect matching"
            });
            r.field("nondegenerate", if nondeg { "yes" } else { "no" });
        }
        Command::Pairs { file, max_len, limit } => {
            let q = load_valid(&file)?;
            let alg = DimerAlgebra::new(&q);
            let mut search = PairSearch::new(max_len);
            search.limit = limit;
            let report = find_non_cancellative_pairs(&alg, &search)?;
            r.line(report.summary(&q));
            r.field("max_len", max_len)
                .field("pairs", report.pairs.len())
                .field("classes", report.classes)
                .field("truncated", if report.truncated { "yes" } else { "no" });
            for (k, p) in report.pairs.iter().enumerate() {
                r.field(
                    &format!("pair.{k}"),
                    format!("{};{};{}", p.p.display(&q), p.r.display(&q), p.witness_power),
                );
            }
        }
        Command::Contract {
            file,
            arrows,
            out,
            reduce,
        } => {
            let m = load_map(&file, &arrows)?;
            let mut target = m.target().clone();
            if reduce {
                target = reduce_removable_two_cycles(&target)?;
            }
            std::fs::write(&out, io::serialize(&target)).with_context(|| format!("writing {}", out.display()))?;
            r.line(format!(
                "wrote {}: {} vertices, {} arrows, {} faces",
                out.display(),
                target.vertex_count(),
                target.arrow_count(),
                target.face_count()
            ));
            r.field("vertices", target.vertex_count())
                .field("arrows", target.arrow_count())
                .field("faces", target.face_count());
        }
        Command::CheckCyclic { file, arrows, bounds } => {
            let m = load_map(&file, &split_names(&arrows))?;
            let bounds = bounds.bounds();
            let report = is_cyclic(&m, &bounds, true)?;
            let names = m.target_simple_matchings().names().to_vec();
            let d = bounds.degree_bound;
            r.field("degree_bound", d)
                .field("box", bounds.box_size)
                .field("max_len", bounds.max_len);
            r.both(
                "target_cancellative",
                if report.target_cancellative { "yes" } else { "no" },
            );
            match &report.discrepancy {
                Some(g) => {
                    let s = monomial_string(g, &names);
                    r.line(format!("cycle algebras differ at {s}"));
                    r.field("discrepancy", s);
                }
                None => {
                    r.line(format!("cycle algebras agree up to degree {d}"));
                }
            }
            let cyclic = report.is_cyclic();
            r.line(format!(
                "cyclic: {} (up to degree {d})",
                if cyclic { "yes" } else { "no" }
            ));
            r.field("cyclic", if cyclic { "yes" } else { "no" });
            let sat = report.saturated();
            r.line(format!(
                "saturation: {}",
                if sat { "stable" } else { "unsaturated at bound" }
            ));
            r.field("saturated", if sat { "yes" } else { "no" });
            if !sat {
                return Ok(Outcome { report: r, code: 3 });
            }
        }
        Command::CycleAlgebra { file, arrows, bounds } => {
            return monoid_command(r, &file, &arrows, bounds.bounds(), false);
        }
        Command::Center { file, arrows, bounds } => {
            return monoid_command(r, &file, &arrows, bounds.bounds(), true);
        }
        Command::Rep { mapspec, values } => {
            let m = if let Some((file, arrows)) = mapspec.split_once('@') {
                load_map(file, &split_names(arrows))?
            } else {
                let fm = fixtures::map(&mapspec)?;
                let q = fixtures::quiver(fm.source)?;
                contract_by_names(&q, fm.arrows.iter().copied())?
            };
            let pairs = values
                .iter()
                .map(|v| {
                    let (name, num) = v
                        .split_once('=')
                        .ok_or_else(|| Error::Precondition(format!("expected name=value, got {v}")))?;
                    let num: Rational = num
                        .trim()
                        .parse()
                        .map_err(|_| Error::Precondition(format!("not a rational: {num}")))?;
                    Ok((name.trim().to_string(), num))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let b = RationalPoint::from_pairs(&m, &pairs)?;
            let rep = build_representation(&m, &b)?;
            let q = m.source();
            for a in q.arrow_ids() {
                r.line(format!("  {} -> {}", q.arrow_name(a), rep.arrow_value(a)));
                r.field(&format!("arrow.{}", q.arrow_name(a)), rep.arrow_value(a));
            }
            r.line("relations: satisfied");
            r.field("relations", "satisfied");
            r.both("generic", if b.is_generic() { "yes" } else { "no" });
            r.both("simple", if is_simple(&m, &rep) { "yes" } else { "no" });
        }
        Command::Render {
            file,
            out,
            contracted,
            matching,
            path,
        } => {
            let q = load_valid(&file)?;
            let mut overlays = Vec::new();
            if let Some(name) = matching {
                let fam = if name.starts_with('m') {
                    simple_matchings(&q)
                } else {
                    enumerate_perfect_matchings(&q)
                };
                let k = fam
                    .index_of_name(&name)
                    .ok_or_else(|| Error::Precondition(format!("no matching named {name}")))?;
                overlays.push(Overlay::Matching(fam.get(k).clone()));
            }
            if !contracted.is_empty() {
                let ids = q.arrows_by_names(contracted.iter().map(String::as_str))?;
                overlays.push(Overlay::Contracted(ids.into_iter().collect()));
            }
            if let Some(p) = path {
                overlays.push(Overlay::Path(Path::parse(&q, &p)?));
            }
            let svg = render(&q, &overlays);
            std::fs::write(&out, &svg).with_context(|| format!("writing {}", out.display()))?;
            r.line(format!("wrote {} ({} bytes)", out.display(), svg.len()));
            r.field("bytes", svg.len());
        }
        Command::Fixtures { list, emit } => match emit {
            Some(name) => {
                let text = fixtures::text(&name)?;
                r.line(text.trim_end());
                r.field("fixture", name);
            }
            None => {
                let _ = list;
                for name in fixtures::quiver_names() {
                    r.line(name);
                    r.field("quiver", name);
                }
                for fm in &fixtures::MAPS {
                    r.line(format!(
                        "{}: {} --arrows {} -> {}",
                        fm.name,
                        fm.source,
                        fm.arrows.join(","),
                        fm.target
                    ));
                    r.field(
                        "map",
                        format!("{} {} {} {}", fm.name, fm.source, fm.arrows.join(","), fm.target),
                    );
                }
            }
        },
    }
    Ok(r.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!(
                "{}",
                if cli.machine {
                    out.report.machine()
                } else {
                    out.report.human()
                }
            );
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<Error>() {
                Some(Error::CapExceeded { .. } | Error::DegreeBeyondCache { .. }) => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
