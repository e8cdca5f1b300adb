//! Command-line front end for the `facering` library.
//!
//! Exit status: 0 when the computation finished, 1 when it finished but a
//! property check failed, 2 on usage, input or precondition errors.

mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use facering::complex::ComplexDocument;
use facering::face_ring::{is_integral_characteristic, is_m_vector, pseudopower, random_lsop, schenzel_predicted};
use facering::homology::{classify, is_buchsbaum, is_homology_sphere, reduced_betti};
use facering::lefschetz::{
    self, basis_link_check, duality_pairing_check, find_wle, g_conjecture_check, join_wle, partial_bary_wlp,
    pd_quotient_dims, star_injection_check, stellar_set_wlp, stellar_wlp_transfer, GVerdict, LSOP_TRIES,
};
use facering::moment_angle::{
    buchsbaum_toric_dims, characteristic_examples, cohomology_basis, euler_hilbert_crosscheck, hochster_table,
    toric_e3_table, union_product, CohomologyClassRep,
};
use facering::report::{ser_lsop, ArtinianCertificate};
use facering::{ArtinianReduction, BettiVector, LsopMatrix, LsopSample, SimplicialComplex};
use serde::Serialize;
use serde_json::json;

use output::Report;

#[derive(Parser)]
#[command(name = "facering", version, about = "Exact face-ring and Lefschetz computations on simplicial complexes")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Complex file (text format, or a JSON document); `-` reads standard input.
    #[arg(long, global = true, conflicts_with = "generator")]
    input: Option<PathBuf>,
    /// Built-in complex: cross:D, cyclic:D,N, simplex-boundary:N, simplex:N or torus7.
    #[arg(long = "gen", global = true, value_name = "SPEC")]
    generator: Option<String>,
    /// Seed for every randomized step; required by randomized commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of linear forms tried by Lefschetz searches.
    #[arg(long, global = true, default_value_t = 50)]
    trials: usize,
    /// Random integer coefficients lie in [-bound, bound].
    #[arg(long, global = true, default_value_t = 10)]
    bound: u32,
    /// Largest vertex count accepted by the moment-angle table.
    #[arg(long, global = true, default_value_t = 20)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads for parallel steps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// f-, h- and g-vectors.
    Fvec,
    /// Reduced rational Betti numbers.
    Homology,
    /// Cohen-Macaulay, Buchsbaum, manifold, sphere and ball tests.
    Classify,
    /// Samples a linear system of parameters.
    Lsop,
    /// Graded dimensions of the Artinian reduction.
    Dims,
    /// Graded socle dimensions of the Artinian reduction.
    Socle,
    /// Closed-form Artinian dimensions for Buchsbaum complexes, compared with the computed ones.
    Schenzel,
    /// Searches for a weak Lefschetz element.
    Wlp,
    /// Whether the g-vector of a homology sphere is an M-vector.
    Gcheck,
    /// Tests a sequence against Macaulay's growth bounds.
    Mvec {
        #[arg(required = true, allow_negative_numbers = true)]
        values: Vec<i64>,
    },
    /// Writes a subdivided complex.
    Subdivide {
        #[command(subcommand)]
        kind: SubdivideKind,
    },
    /// Bigraded Betti numbers of the moment-angle complex.
    Hochster {
        /// Include the cohomology of each contributing full subcomplex.
        #[arg(long)]
        detail: bool,
    },
    /// Union product of two basis classes, each given as `SUBSET:DEGREE` or `SUBSET:DEGREE#INDEX`.
    UnionProduct {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
    },
    /// Rational cohomology dimensions of the toric space over a Buchsbaum complex.
    ToricDims,
    /// Nondegeneracy of the multiplication pairing.
    Duality,
    /// Injectivity of restrictions to stars of faces with `i` vertices in degree `k`.
    StarInject {
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Subdivision experiments.
    Experiment {
        #[command(subcommand)]
        kind: ExperimentKind,
    },
    /// Artinian dimensions of the interior face ideal of a homology ball.
    Interior,
    /// Star restrictions along a face-monomial basis in degree `k`.
    BasisLink {
        #[arg(long)]
        k: Option<usize>,
    },
    /// Coordinate-form certificate for the join of a simplex boundary with the input.
    JoinWle {
        /// Dimension of the simplex whose boundary is joined.
        #[arg(long)]
        n: usize,
    },
    /// The bundled characteristic matrices on the boundary of a triangle.
    Characteristic,
}

#[derive(Subcommand)]
enum SubdivideKind {
    /// Stellar subdivision at one face.
    Stellar {
        #[arg(long)]
        face: String,
    },
    /// Full barycentric subdivision.
    Bary,
    /// Partial barycentric subdivision.
    Partial {
        #[arg(long)]
        i: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Forward,
    Backward,
}

#[derive(Subcommand)]
enum ExperimentKind {
    /// Injectivity on a partial barycentric subdivision.
    PartialBaryWlp {
        #[arg(long)]
        k: usize,
    },
    /// Injectivity after subdividing along a face-monomial basis.
    StellarSetWlp {
        #[arg(long)]
        k: usize,
    },
    /// Lefschetz search before and after one stellar subdivision.
    StellarTransfer {
        #[arg(long)]
        face: String,
        #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
        direction: DirectionArg,
    },
}

impl Config {
    fn complex(&self) -> Result<SimplicialComplex> {
        match (&self.input, &self.generator) {
            (Some(p), _) => input::read(p),
            (None, Some(g)) => input::generate(g),
            (None, None) => bail!("one of --input or --gen is required"),
        }
    }

    fn seed(&self) -> Result<u64> {
        self.seed.ok_or_else(|| anyhow!("--seed is required for this command"))
    }

    fn sample(&self, c: &SimplicialComplex) -> Result<LsopSample> {
        Ok(random_lsop(c, self.bound, self.seed()?, LSOP_TRIES)?)
    }

    fn reduction(&self, c: &SimplicialComplex) -> Result<ArtinianReduction> {
        Ok(ArtinianReduction::new(c, &self.sample(c)?.lsop)?)
    }
}

#[derive(Serialize)]
struct LsopReport<'a> {
    #[serde(serialize_with = "ser_lsop")]
    lsop: &'a LsopMatrix,
    seed: u64,
    tries: usize,
    integral: bool,
}

#[derive(Serialize)]
struct SubdivisionOutput {
    #[serde(flatten)]
    document: ComplexDocument,
    f_vector: Vec<u64>,
    new_vertices: Vec<usize>,
}

fn betti_json(b: &BettiVector) -> serde_json::Value {
    json!({ "from_degree": -1, "values": b.values() })
}

/// Picks a basis class from `SUBSET:DEGREE[#INDEX]`.
fn class_spec(c: &SimplicialComplex, spec: &str) -> Result<CohomologyClassRep> {
    let (body, index) = match spec.split_once('#') {
        Some((b, i)) => (b, i.parse::<usize>()?),
        None => (spec, 0),
    };
    let (subset, degree) = body
        .split_once(':')
        .ok_or_else(|| anyhow!("expected SUBSET:DEGREE, got `{spec}`"))?;
    let degree: isize = degree.parse()?;
    let subset = if subset.is_empty() { Vec::new() } else { input::parse_face(subset)? };
    if let Some(&v) = subset.iter().find(|&&v| v == 0 || v > c.m()) {
        bail!("vertex {v} is out of range");
    }
    if subset.is_empty() && degree == -1 {
        return Ok(CohomologyClassRep::unit());
    }
    let basis = cohomology_basis(c, &subset, degree);
    let n = basis.len();
    basis
        .into_iter()
        .nth(index)
        .ok_or_else(|| anyhow!("class index {index} out of range: the cohomology has dimension {n}"))
}

fn run(cli: &Cli) -> Result<Report> {
    let cfg = &cli.config;
    rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs.max(1)).build_global().ok();
    match &cli.command {
        Command::Mvec { values } => {
            let pseudo = (1..values.len())
                .map(|i| match u64::try_from(values[i]) {
                    Ok(a) => pseudopower(a, i).map(Some),
                    Err(_) => Ok(None),
                })
                .collect::<facering::Result<Vec<_>>>()?;
            return Report::new(
                json!({ "sequence": values, "m_vector": is_m_vector(values), "pseudopowers": pseudo }),
                false,
            );
        }
        Command::Characteristic => return Report::new(characteristic_examples(), false),
        _ => {}
    }
    let c = cfg.complex()?;
    match &cli.command {
        Command::Mvec { .. } | Command::Characteristic => unreachable!("handled above"),
        Command::Fvec => Report::new(
            json!({
                "vertices": c.m(),
                "d": c.rank(),
                "f_vector": c.f_vector(),
                "h_vector": c.h_vector(),
                "g_vector": c.g_vector(),
            }),
            false,
        ),
        Command::Homology => {
            let b = reduced_betti(&c);
            Report::new(
                json!({ "reduced_betti": betti_json(&b), "euler_characteristic": b.euler_characteristic() }),
                false,
            )
        }
        Command::Classify => Report::new(classify(&c), false),
        Command::Lsop => {
            let s = cfg.sample(&c)?;
            let integral = is_integral_characteristic(&c, &s.lsop)?;
            Report::new(LsopReport { lsop: &s.lsop, seed: s.seed, tries: s.tries, integral }, false)
        }
        Command::Dims => Report::new(ArtinianCertificate::new(&c, &cfg.sample(&c)?, false)?, false),
        Command::Socle => Report::new(ArtinianCertificate::new(&c, &cfg.sample(&c)?, true)?, false),
        Command::Schenzel => {
            let b = reduced_betti(&c);
            let predicted = schenzel_predicted(&c.h_vector(), &b, c.rank())?;
            let computed = cfg.reduction(&c)?.dims();
            let buchsbaum = is_buchsbaum(&c);
            let matches = predicted.iter().map(|&x| x.max(0) as usize).eq(computed.iter().copied())
                && predicted.iter().all(|&x| x >= 0);
            Report::new(
                json!({
                    "h_vector": c.h_vector(),
                    "reduced_betti": betti_json(&b),
                    "buchsbaum": buchsbaum,
                    "predicted": predicted,
                    "computed": computed,
                    "matches": matches,
                }),
                buchsbaum && !matches,
            )
        }
        Command::Wlp => {
            let red = cfg.reduction(&c)?;
            let cert = find_wle(&red, cfg.trials, cfg.bound, cfg.seed()?)?;
            let flag = !cert.certified();
            Report::new(json!({ "dims": red.dims(), "certificate": cert }), flag)
        }
        Command::Gcheck => {
            let g = g_conjecture_check(&c)?;
            let flag = g.verdict == GVerdict::NotMVector;
            Report::new(g, flag)
        }
        Command::Subdivide { kind } => {
            let sub = match kind {
                SubdivideKind::Stellar { face } => {
                    let f = input::parse_face(face)?;
                    c.stellar_sequence(&[f])?
                }
                SubdivideKind::Bary => c.partial_barycentric(c.rank())?,
                SubdivideKind::Partial { i } => c.partial_barycentric(*i)?,
            };
            let out = SubdivisionOutput {
                document: ComplexDocument::from(&sub.complex),
                f_vector: sub.complex.f_vector(),
                new_vertices: sub.new_vertices(),
            };
            let mut r = Report::new(out, false)?;
            r.text = Some(sub.complex.to_text());
            Ok(r)
        }
        Command::Hochster { detail } => {
            let t = hochster_table(&c, cfg.cap, cfg.jobs)?;
            let euler = euler_hilbert_crosscheck(&c, &t);
            let sphere = is_homology_sphere(&c);
            let symmetric = t.is_symmetric(c.rank());
            let mut v = json!({
                "vertices": c.m(),
                "poincare": t.poincare(),
                "bigraded": t.rows(),
                "euler_hilbert_crosscheck": euler,
                "homology_sphere": sphere,
                "bigraded_symmetric": symmetric,
            });
            if *detail {
                v["subsets"] = serde_json::to_value(&t)?["subsets"].take();
            }
            Report::new(v, !euler || (sphere && !symmetric))
        }
        Command::UnionProduct { first, second } => {
            let a = class_spec(&c, first)?;
            let b = class_spec(&c, second)?;
            let p = union_product(&c, &a, &b)?;
            let degree = a.total_degree() + b.total_degree();
            Report::new(json!({ "first": a, "second": b, "product": p, "total_degree": degree }), false)
        }
        Command::ToricDims => {
            let s = cfg.sample(&c)?;
            let dims = buchsbaum_toric_dims(&c, &s.lsop)?;
            Report::new(json!({ "dims": dims, "e3_table": toric_e3_table(&c)? }), false)
        }
        Command::Duality => {
            let red = cfg.reduction(&c)?;
            if is_homology_sphere(&c) {
                let r = duality_pairing_check(&red)?;
                let flag = !r.nondegenerate;
                Report::new(r, flag)
            } else {
                let r = pd_quotient_dims(&red)?;
                let flag = !r.nondegenerate;
                Report::new(r, flag)
            }
        }
        Command::StarInject { i, k } => {
            let red = cfg.reduction(&c)?;
            let d = red.top();
            let pairs: Vec<(usize, usize)> = match (i, k) {
                (Some(i), Some(k)) => vec![(*i, *k)],
                (Some(i), None) => (0..=d.saturating_sub(*i)).map(|k| (*i, k)).collect(),
                (None, Some(k)) => (1..=d.saturating_sub(*k)).map(|i| (i, *k)).collect(),
                (None, None) => (1..=d).flat_map(|i| (0..=d - i).map(move |k| (i, k))).collect(),
            };
            let mut flag = false;
            let mut rows = Vec::new();
            for (i, k) in pairs {
                let r = star_injection_check(&red, i, k)?;
                flag |= !r.injective();
                rows.push(json!({ "i": i, "report": r, "injective": r.injective() }));
            }
            Report::new(rows, flag)
        }
        Command::Experiment { kind } => {
            let seed = cfg.seed()?;
            match kind {
                ExperimentKind::PartialBaryWlp { k } => {
                    let r = partial_bary_wlp(&c, *k, cfg.trials, cfg.bound, seed)?;
                    let flag = r.flag;
                    Report::new(r, flag)
                }
                ExperimentKind::StellarSetWlp { k } => {
                    let r = stellar_set_wlp(&c, *k, cfg.trials, cfg.bound, seed)?;
                    let flag = r.flag;
                    Report::new(r, flag)
                }
                ExperimentKind::StellarTransfer { face, direction } => {
                    let dir = match direction {
                        DirectionArg::Forward => lefschetz::Direction::Forward,
                        DirectionArg::Backward => lefschetz::Direction::Backward,
                    };
                    let f = input::parse_face(face)?;
                    let r = stellar_wlp_transfer(&c, &f, dir, cfg.trials, cfg.bound, seed)?;
                    let flag = r.flag;
                    Report::new(r, flag)
                }
            }
        }
        Command::Interior => {
            let red = cfg.reduction(&c)?;
            let interior = red.interior_ideal_dims()?;
            let dims = red.dims();
            let symmetric = interior.iter().eq(dims.iter().rev());
            Report::new(json!({ "interior": interior, "dims": dims, "dual": symmetric }), !symmetric)
        }
        Command::BasisLink { k } => {
            let red = cfg.reduction(&c)?;
            let ks: Vec<usize> = match k {
                Some(k) => vec![*k],
                None => (1..=red.top()).collect(),
            };
            let mut flag = false;
            let mut rows = Vec::new();
            for k in ks {
                let r = basis_link_check(&red, k)?;
                flag |= !r.ok;
                rows.push(json!({ "k": k, "report": r }));
            }
            Report::new(rows, flag)
        }
        Command::JoinWle { n } => {
            let join = facering::complex::boundary_simplex(*n)?.join(&c);
            let s = cfg.sample(&join)?;
            let cert = join_wle(*n, &c, &s.lsop)?;
            let flag = !cert.certified();
            Report::new(cert, flag)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.config.format == Format::Json));
            ExitCode::from(u8::from(report.flag))
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
