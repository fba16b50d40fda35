use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use knotcert::formats::{read_polygon, write_forest_table};
use knotcert::report::{
    check_isotopy_report, check_push_report, diagram_report, enclosure_report, isotopy_report, push_report,
    transition_report,
};
use knotcert::svg::render_svg;
use knotcert::Error;
use knotcert_core::bezier::{scale_for_subdivision, subdivide_levels, ControlPolygon};
use knotcert_core::certify::{enclosure_for_piece, CertifyOptions, DEFAULT_MAX_LEVEL};
use knotcert_core::diagram::{parse_plane, project_diagram};
use knotcert_core::kernel::{parse_rational, Point3, Rational};
use knotcert_core::{bisect_transition, certify_isotopy_with, certify_push, PLKnot, VertexHomotopy};
use num_bigint::BigInt;
use num_traits::One;

const EXIT_UNCERTIFIED: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "knotcert",
    version,
    about = "Exact knot-type certificates for closed Bezier curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Plane {
    Xy,
    Yz,
    Xz,
}

#[derive(Subcommand)]
enum Command {
    /// Subdivide at 1/2 repeatedly and print the pieces as a table.
    Subdivide {
        input: PathBuf,
        #[arg(long)]
        levels: u32,
        /// `auto` scales integer input by 2^(levels*(degree+1)+1), `2^m` by 2^m, `none` not at all.
        #[arg(long, default_value = "none")]
        scale: String,
        /// Tag each piece with its strictly monotone coordinates.
        #[arg(long)]
        annotate: bool,
        /// Print every level from 1 up to `levels`, not only the last.
        #[arg(long)]
        all_levels: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Certify the curve against its PL refinement and write the certificate.
    Certify {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
        max_level: u32,
        #[arg(long, default_value_t = 1)]
        min_level: u32,
        /// Allow one piece hull to be replaced by a trimmed enclosure.
        #[arg(long)]
        repair: bool,
        /// Enclosure normals to try first, as `a,b,c`.
        #[arg(long, requires = "normal_r", value_parser = parse_point)]
        normal_l: Option<Point3>,
        #[arg(long, requires = "normal_l", value_parser = parse_point)]
        normal_r: Option<Point3>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Project the polygon (or its level-L refinement) and list the crossings.
    Diagram {
        input: PathBuf,
        #[arg(long, value_enum)]
        axis: Plane,
        /// Subdivision level of the refinement to project; 0 projects the control polygon.
        #[arg(long, default_value_t = 0)]
        level: u32,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the certified knot class of the curve.
    Classify {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
        max_level: u32,
        /// Also print the handedness, level and Jones polynomial.
        #[arg(short, long)]
        verbose: bool,
    },
    /// Certify a straight-line move of one control point.
    Push {
        input: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long, value_parser = parse_point)]
        to: Point3,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Bracket the parameter where the knot class changes between two polygons
    /// that differ in one control point.
    Bisect {
        start: PathBuf,
        end: PathBuf,
        #[arg(long, value_parser = parse_q)]
        tol: Rational,
        #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
        max_level: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the trimmed enclosure of one piece against all other pieces.
    Enclosure {
        input: PathBuf,
        #[arg(long)]
        piece: usize,
        #[arg(long, value_parser = parse_point)]
        normal_l: Point3,
        #[arg(long, value_parser = parse_point)]
        normal_r: Point3,
        #[arg(long, default_value_t = 3)]
        level: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-validate an isotopy or push report against its input polygon.
    Check { input: PathBuf, report: PathBuf },
}

fn parse_q(s: &str) -> Result<Rational, String> {
    parse_rational(s.trim()).map_err(|e| e.to_string())
}

fn parse_point(s: &str) -> Result<Point3, String> {
    let c: Vec<Rational> = s.split(',').map(parse_q).collect::<Result<_, _>>()?;
    match <[Rational; 3]>::try_from(c) {
        Ok([x, y, z]) => Ok(Point3::new(x, y, z)),
        Err(_) => Err(format!("expected x,y,z, got {s:?}")),
    }
}

/// A command failure with its exit status.
struct Failure {
    status: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Core(c) => core_status(c),
            Error::Io { .. } | Error::Parse { .. } => EXIT_INPUT,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

impl From<knotcert_core::Error> for Failure {
    fn from(e: knotcert_core::Error) -> Self {
        Error::from(e).into()
    }
}

fn core_status(e: &knotcert_core::Error) -> u8 {
    use knotcert_core::Error as E;
    match e {
        E::Certification(_) | E::PushFailure { .. } | E::Evidence(_) | E::Construction(_) => EXIT_UNCERTIFIED,
        E::Domain(_) | E::Degenerate(_) | E::DegenerateProjection { .. } | E::Capacity { .. } | E::Precondition(_) => {
            EXIT_INPUT
        }
    }
}

fn uncertified(message: String) -> Failure {
    Failure {
        status: EXIT_UNCERTIFIED,
        message,
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => write_file(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::io(Path::new("<stdout>"), e).into())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Error::io(path, e).into())
}

fn scaled_input(cp: &ControlPolygon, scale: &str, levels: u32) -> Result<ControlPolygon, Failure> {
    let bad = || Failure {
        status: EXIT_INPUT,
        message: format!("--scale must be auto, none or 2^m, got {scale:?}"),
    };
    match scale {
        "none" => Ok(cp.clone()),
        "auto" => Ok(scale_for_subdivision(cp, levels)?.0),
        s => {
            let m: usize = s.strip_prefix("2^").and_then(|m| m.parse().ok()).ok_or_else(bad)?;
            Ok(cp.scaled(&Rational::from_integer(BigInt::one() << m)))
        }
    }
}

fn refinement(cp: &ControlPolygon, level: u32) -> Result<PLKnot, Failure> {
    if !cp.is_closed() {
        return Err(Failure {
            status: EXIT_INPUT,
            message: "control polygon is not closed".into(),
        });
    }
    let mut pts = if level == 0 {
        cp.points().to_vec()
    } else {
        knotcert_core::certify::certification_forest(cp, level)?
            .0
            .refinement_points()
    };
    pts.pop();
    Ok(PLKnot::new(pts)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Subdivide {
            input,
            levels,
            scale,
            annotate,
            all_levels,
            output,
        } => {
            let cp = scaled_input(&read_polygon(&input)?, &scale, levels)?;
            let first = if all_levels { 1.min(levels) } else { levels };
            let text: String = (first..=levels)
                .map(|l| write_forest_table(&subdivide_levels(&cp, l), annotate))
                .collect();
            emit(&output, &text)
        }
        Command::Certify {
            input,
            max_level,
            min_level,
            repair,
            normal_l,
            normal_r,
            output,
        } => {
            let cp = read_polygon(&input)?;
            let opts = CertifyOptions {
                min_level,
                max_level,
                enclosure_repair: repair,
                enclosure_normals: normal_l.zip(normal_r),
            };
            let cert = certify_isotopy_with(&cp, &opts)?;
            emit(&output, &isotopy_report(&cert))
        }
        Command::Diagram {
            input,
            axis,
            level,
            svg,
            output,
        } => {
            let cp = read_polygon(&input)?;
            let name = match axis {
                Plane::Xy => "xy",
                Plane::Yz => "yz",
                Plane::Xz => "xz",
            };
            let d = project_diagram(&refinement(&cp, level)?, parse_plane(name)?)?;
            if let Some(path) = svg {
                write_file(&path, &render_svg(&d))?;
            }
            emit(&output, &diagram_report(&d))
        }
        Command::Classify {
            input,
            max_level,
            verbose,
        } => {
            let cp = read_polygon(&input)?;
            let cert = certify_isotopy_with(&cp, &CertifyOptions::with_max_level(max_level))?;
            let mut text = format!("{}\n", cert.pl_knot_class.name());
            if verbose {
                text.push_str(&format!(
                    "class {}\nlevel {}\njones {}\n",
                    cert.pl_knot_class, cert.level, cert.jones
                ));
            }
            emit(&None, &text)
        }
        Command::Push {
            input,
            vertex,
            to,
            output,
        } => {
            let cp = read_polygon(&input)?;
            let cert = certify_push(&cp, vertex, &to)?;
            emit(&output, &push_report(&cert))
        }
        Command::Bisect {
            start,
            end,
            tol,
            max_level,
            output,
        } => {
            let h = VertexHomotopy::between(&read_polygon(&start)?, &read_polygon(&end)?)?;
            let t = bisect_transition(&h, &tol, max_level)?;
            emit(&output, &transition_report(&t))
        }
        Command::Enclosure {
            input,
            piece,
            normal_l,
            normal_r,
            level,
            output,
        } => {
            let cp = read_polygon(&input)?;
            let r = enclosure_for_piece(&cp, level, piece, &(normal_l, normal_r))?;
            let text = enclosure_report(level, &r);
            emit(&output, &text)?;
            match r.clearances.iter().find(|(_, s)| !s.is_disjoint_modulo_shared()) {
                Some((j, s)) => Err(uncertified(format!(
                    "enclosure of piece {piece} meets the hull of piece {j} at {}",
                    s.overlap().expect("an overlapping part")
                ))),
                None => Ok(()),
            }
        }
        Command::Check { input, report } => {
            let cp = read_polygon(&input)?;
            let text = fs::read_to_string(&report).map_err(|e| Error::io(&report, e))?;
            let kind = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .unwrap_or("");
            let problems = match kind {
                "format isotopy 1" => check_isotopy_report(&text, &cp)?,
                "format push 1" => check_push_report(&text, &cp)?,
                other => {
                    return Err(Failure {
                        status: EXIT_INPUT,
                        message: format!("cannot check a report starting {other:?}"),
                    })
                }
            };
            if problems.is_empty() {
                emit(&None, "ok\n")
            } else {
                Err(uncertified(problems.join("\n")))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("knotcert: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}
