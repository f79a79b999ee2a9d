use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use iwmat::autiso::{aut_group, certify, find_isomorphism, new_aut, NewAut};
use iwmat::canon::{code_invariant_bounded, minclass_bounded};
use iwmat::config::EngineConfig;
use iwmat::counting::{count_iw, count_sym_iw, monomial_group_order};
use iwmat::db::ClassDatabase;
use iwmat::library::{build_size, Library};
use iwmat::nsoks::nsoks;
use iwmat::projective::{projective_incidence, projective_weighing, verify_projective_symmetric_count, ProjectiveSpace};
use iwmat::search::classify_piw;
use iwmat::structure::{assemble_full_classification, PrimitiveIndex};
use iwmat::symmetry::{assemble_symmetric_classification, sym_classes, find_symmetric_member, symmetric_counts, Sign};
use iwmat::{Error, IntMatrix, Result};

#[derive(Parser)]
#[command(name = "iwmat", version, about = "Integer weighing matrices: search, classification and counting")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// TOML file with engine settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Records,
}

#[derive(Args)]
struct LibraryArgs {
    #[arg(long)]
    size: usize,
    #[arg(long)]
    weight: u64,
    /// Directory of `iw{size}_{weight}.iwdb` files.
    #[arg(long)]
    library: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Representations of N as a sum of R squares.
    Nsoks {
        n: u64,
        r: usize,
        #[arg(long)]
        maxsq: Option<u64>,
        #[arg(long)]
        count_only: bool,
    },
    /// H-classes of PIW(rows, cols, weight).
    Classify {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        weight: u64,
        #[arg(long)]
        mindepth: Option<usize>,
        #[arg(long)]
        entry_cap: Option<u64>,
        /// Write the primitive classes (square case) as a class database.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leave symmetric data out of the database.
        #[arg(long)]
        no_symmetric: bool,
    },
    /// Minimum of the H-class.
    Minclass {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Code invariant at depth D.
    Codeinv {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Automorphism group.
    Aut {
        #[arg(long)]
        matrix: PathBuf,
        /// Certify with tuples of this length.
        #[arg(long)]
        certify: Option<usize>,
    },
    /// H-equivalence test.
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Primitive decomposition against a library.
    Decompose {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        library: PathBuf,
        #[arg(long, default_value_t = 25)]
        weight: u64,
    },
    /// Full H/TH classification from primitive blocks.
    Assemble(LibraryArgs),
    /// SH-subclasses of the class of a matrix.
    Symclasses {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        anti: bool,
    },
    /// (Anti-)symmetric classification from primitive blocks.
    AssembleSym {
        #[command(flatten)]
        lib: LibraryArgs,
        #[arg(long)]
        anti: bool,
    },
    /// Number of matrices from the generating function.
    Count {
        #[command(flatten)]
        lib: LibraryArgs,
        #[arg(long, conflicts_with = "antisymmetric")]
        symmetric: bool,
        #[arg(long)]
        antisymmetric: bool,
        /// Restrict to entries in {-1, 0, 1}.
        #[arg(long)]
        weighing_only: bool,
    },
    /// Projective-space matrices.
    Projective {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        incidence: bool,
        #[arg(long)]
        verify_symmetric: bool,
    },
    /// Re-checks a class database and its counting identities.
    Validate {
        #[arg(long)]
        db: PathBuf,
        #[arg(long)]
        certify: Option<usize>,
    },
    /// Class tables for one size.
    Report(LibraryArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("iwmat: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}

fn exit_status(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::Parse(_) | Error::Dimension(_) => 2,
        Error::Capacity(_) | Error::Incomplete(_) => 3,
        Error::Consistency(_) | Error::Schema(_) | Error::UnknownPrimitive { .. } => 4,
        _ => 1,
    }
}

fn read_matrix(path: &Path) -> Result<IntMatrix> {
    IntMatrix::parse_text(&std::fs::read_to_string(path)?)
}

fn emit(format: Format, table: impl FnOnce() -> String, records: impl Serialize) -> Result<()> {
    match format {
        Format::Table => print!("{}", table()),
        Format::Records => println!("{}", serde_json::to_string_pretty(&records)?),
    }
    Ok(())
}

fn load_library(args: &LibraryArgs) -> Result<Library> {
    let lib = Library::load_dir(&args.library, args.weight)?;
    lib.primitives.check_complete(args.size)?;
    Ok(lib)
}

fn join(v: &[BigUint]) -> String {
    v.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(" ")
}

/// `p(n)+q(m)` grouping of a multiset of orders.
fn order_summary(v: &[BigUint]) -> String {
    if v.is_empty() {
        return "--".into();
    }
    let mut counts: BTreeMap<&BigUint, usize> = BTreeMap::new();
    for o in v {
        *counts.entry(o).or_default() += 1;
    }
    counts.iter().rev().map(|(o, c)| format!("{c}({o})")).collect::<Vec<_>>().join("+")
}

fn run(cli: &Cli) -> Result<()> {
    let mut config = match &cli.config {
        Some(p) => EngineConfig::load(p)?,
        None => EngineConfig::default(),
    };
    if cli.threads.is_some() {
        config.threads = cli.threads;
    }
    config.validate()?;
    if let Some(t) = config.threads {
        // a second initialisation only happens in tests; ignore it
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let fmt = cli.format;
    match &cli.command {
        Command::Nsoks { n, r, maxsq, count_only } => {
            if *r == 0 {
                return Err(Error::InvalidArgument("R must be positive".into()));
            }
            let reps = nsoks(*n, *r, *maxsq);
            if *count_only {
                println!("{}", reps.len());
                return Ok(());
            }
            emit(
                fmt,
                || reps.iter().map(|s| format!("{:?}\n", s.terms)).collect(),
                &reps,
            )
        }
        Command::Classify { rows, cols, weight, mindepth, entry_cap, out, no_symmetric } => {
            if mindepth.is_some() {
                config.mindepth = *mindepth;
            }
            if entry_cap.is_some() {
                config.entry_cap = *entry_cap;
            }
            if let Some(out) = out {
                if rows != cols {
                    return Err(Error::InvalidArgument("--out needs a square search".into()));
                }
                let db = build_size(*rows, *weight, &config, !no_symmetric)?;
                db.save(out)?;
                println!("{} primitive classes written to {}", db.classes.len(), out.display());
                return Ok(());
            }
            let reps = classify_piw(*rows, *cols, *weight, &config.search())?;
            let orders: Vec<BigUint> = reps.iter().map(|a| aut_group(a).map(|g| g.order)).collect::<Result<_>>()?;
            emit(
                fmt,
                || {
                    let mut s = format!("{} classes\n", reps.len());
                    for (i, (a, o)) in reps.iter().zip(&orders).enumerate() {
                        s += &format!("\nclass {} |Aut| = {o}\n{}", i + 1, a.to_text());
                    }
                    s
                },
                reps.iter()
                    .zip(&orders)
                    .enumerate()
                    .map(|(i, (a, o))| json!({ "serial": i + 1, "representative": a, "aut_order": o.to_string() }))
                    .collect::<Vec<_>>(),
            )
        }
        Command::Minclass { matrix } => {
            let m = minclass_bounded(&read_matrix(matrix)?, config.exhaustion_bound)?;
            emit(fmt, || m.to_text(), &m)
        }
        Command::Codeinv { matrix, depth } => {
            let c = code_invariant_bounded(&read_matrix(matrix)?, *depth, config.exhaustion_bound)?;
            emit(fmt, || c.codes.iter().map(|x| format!("{x}\n")).collect(), json!({
                "depth": c.d,
                "codes": c.codes.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            }))
        }
        Command::Aut { matrix, certify: r } => {
            let a = read_matrix(matrix)?;
            let mut g = aut_group(&a)?;
            let mut rounds = None;
            if let Some(r) = r {
                let (h, k) = certify(&a, &g, *r)?;
                g = h;
                rounds = Some(k);
            }
            emit(
                fmt,
                || {
                    let mut s = format!("order {}\ngenerators {}\n", g.order, g.generators.len());
                    if let Some(k) = rounds {
                        s += &format!("certified after {k} additions\n");
                    }
                    s
                },
                &g,
            )
        }
        Command::Iso { a, b } => {
            let h = find_isomorphism(&read_matrix(a)?, &read_matrix(b)?)?;
            emit(
                fmt,
                || match &h {
                    Some(p) => format!("equivalent\nleft {:?}\nright {:?}\n", p.left, p.right),
                    None => "not equivalent\n".into(),
                },
                &h,
            )
        }
        Command::Decompose { matrix, library, weight } => {
            let lib = Library::load_dir(library, *weight)?;
            let a = read_matrix(matrix)?;
            lib.primitives.check_complete(a.rows())?;
            let d = PrimitiveIndex::new(&lib.primitives.classes)?.decompose(&a)?;
            let letters = lib.primitives.size_letters();
            emit(
                fmt,
                || {
                    let mut s = format!("signature {}\nshape {}\n", d.signature(), d.shape(&letters));
                    for c in &d.components {
                        s += &format!("{} x{} size {} |Aut| {}\n", c.name, c.multiplicity, c.size, c.aut_order);
                    }
                    s
                },
                &d,
            )
        }
        Command::Assemble(args) => {
            let lib = load_library(args)?;
            let full = assemble_full_classification(&lib.primitives, args.size)?;
            let table = full.shape_table(&lib.primitives.size_letters());
            emit(
                fmt,
                || {
                    let mut s = String::from("shape TH H\n");
                    for r in &table {
                        s += &format!("{} {} {}\n", r.shape, r.th_count, r.h_count);
                    }
                    s += &format!("total {} {}\ncardinality {}\n", full.th_count, full.h_count, full.total_cardinality());
                    s
                },
                &full,
            )
        }
        Command::Symclasses { matrix, anti } => {
            let sign = if *anti { Sign::Antisymmetric } else { Sign::Symmetric };
            let a = read_matrix(matrix)?;
            let g = aut_group(&a)?;
            let found = if sign.holds(&a) {
                Some(sym_classes(&a, &g, sign, config.stream_bound)?)
            } else {
                match find_symmetric_member(&a, &g, sign, config.stream_bound)? {
                    Some((s, _)) => {
                        let h = aut_group(&s)?;
                        Some(sym_classes(&s, &h, sign, config.stream_bound)?)
                    }
                    None => None,
                }
            };
            let (reps, orders) = found.map_or((Vec::new(), Vec::new()), |c| (c.reps, c.saut_orders));
            emit(
                fmt,
                || {
                    let mut s = format!("{} subclasses\nSAut orders {}\n", reps.len(), join(&orders));
                    for (r, o) in reps.iter().zip(&orders) {
                        s += &format!("\n|SAut| = {o}\n{}", r.to_text());
                    }
                    s
                },
                reps.iter()
                    .zip(&orders)
                    .map(|(r, o)| json!({ "representative": r, "saut_order": o.to_string() }))
                    .collect::<Vec<_>>(),
            )
        }
        Command::AssembleSym { lib: args, anti } => {
            let sign = if *anti { Sign::Antisymmetric } else { Sign::Symmetric };
            let lib = load_library(args)?;
            let c = assemble_symmetric_classification(&lib.primitives, lib.require_symmetric()?, args.size, sign)?;
            emit(
                fmt,
                || {
                    let mut s = String::from("parent subclasses SAut\n");
                    for (p, orders) in c.per_parent() {
                        s += &format!("{p} {} {}\n", orders.len(), order_summary(&orders));
                    }
                    s += &format!("classes {}\ntotal {}\n", c.classes.len(), c.total);
                    s
                },
                &c,
            )
        }
        Command::Count { lib: args, symmetric, antisymmetric, weighing_only } => {
            let mut lib = load_library(args)?;
            if *weighing_only {
                lib = lib.weighing_only();
            }
            let n = if *symmetric || *antisymmetric {
                let sign = if *antisymmetric { Sign::Antisymmetric } else { Sign::Symmetric };
                count_sym_iw(&symmetric_counts(&lib.primitives, lib.require_symmetric()?, sign)?, args.size)?
            } else {
                count_iw(&lib.primitives.counts(), args.size)?
            };
            println!("{n}");
            Ok(())
        }
        Command::Projective { dim, prime, incidence, verify_symmetric } => {
            let space = ProjectiveSpace::new(*dim, *prime)?;
            if *verify_symmetric {
                let c = verify_projective_symmetric_count(&space, *incidence, config.stream_bound)?;
                return emit(
                    fmt,
                    || {
                        let mut s = format!(
                            "order {}\n|Aut| {} predicted {}\nsymmetric subclasses {} predicted {}\n",
                            space.size(),
                            c.aut_order,
                            c.predicted_aut_order,
                            c.computed,
                            c.predicted
                        );
                        if let Some(e) = c.negation_equivalent {
                            s += &format!("negation in the same subclass {e}\n");
                        }
                        s += if c.holds() { "PASS\n" } else { "FAIL\n" };
                        s
                    },
                    &c,
                );
            }
            let m = if *incidence { projective_incidence(&space) } else { projective_weighing(&space) };
            emit(fmt, || m.to_text(), &m)
        }
        Command::Validate { db, certify: r } => validate(db, r.unwrap_or(config.tuple_length), &config),
        Command::Report(args) => report(args, fmt),
    }
}

/// Certification, invariant distinctness and counting identities.
fn validate(path: &Path, tuple_length: usize, config: &EngineConfig) -> Result<()> {
    let db = ClassDatabase::load(path)?;
    let n = db.header.size;
    let full_order = monomial_group_order(n).pow(2);
    for c in &db.classes {
        if let NewAut::Found(p) = new_aut(&c.representative, &c.aut, tuple_length.min(n))? {
            return Err(Error::Consistency(format!("class {}: automorphism {p:?} missing", c.name)));
        }
        if &c.cardinality * &c.aut.order != full_order {
            return Err(Error::Consistency(format!("class {}: orbit-stabilizer fails", c.name)));
        }
    }
    let depth = n.min(4);
    let mut seen = BTreeMap::new();
    for c in &db.classes {
        let inv = code_invariant_bounded(&c.representative, depth, config.exhaustion_bound)?;
        if let Some(other) = seen.insert(inv.codes, &c.name) {
            if find_isomorphism(&db.classes.iter().find(|d| d.name == *other).unwrap().representative, &c.representative)?.is_some() {
                return Err(Error::Consistency(format!("classes {other} and {} coincide", c.name)));
            }
        }
    }
    println!("{}: {} classes certified", path.display(), db.classes.len());
    let dir = path.parent().unwrap_or(Path::new("."));
    if let Ok(lib) = Library::load_dir(dir, db.header.weight) {
        if lib.primitives.complete_through >= n {
            let full = assemble_full_classification(&lib.primitives, n)?;
            let expected = count_iw(&lib.primitives.counts(), n)?;
            if full.total_cardinality() != expected {
                return Err(Error::Consistency("class cardinalities do not sum to the count".into()));
            }
            for c in &full.records {
                if &c.cardinality * &c.aut.order != full_order {
                    return Err(Error::Consistency(format!("assembled class {}: orbit-stabilizer fails", c.name)));
                }
            }
            println!("{} H-classes, cardinality sum {expected}", full.h_count);
            if lib.has_symmetric() {
                for sign in [Sign::Symmetric, Sign::Antisymmetric] {
                    let c = assemble_symmetric_classification(&lib.primitives, &lib.symmetric, n, sign)?;
                    let expected = count_sym_iw(&symmetric_counts(&lib.primitives, &lib.symmetric, sign)?, n)?;
                    if c.total != expected {
                        return Err(Error::Consistency(format!("{sign:?} subclass sizes do not sum to the count")));
                    }
                    println!("{sign:?}: {} SH-classes, total {expected}", c.classes.len());
                }
            }
        }
    }
    println!("PASS");
    Ok(())
}

fn report(args: &LibraryArgs, fmt: Format) -> Result<()> {
    let lib = load_library(args)?;
    let n = args.size;
    let sym = lib.has_symmetric().then_some(&lib.symmetric);
    let rows: Vec<_> = lib
        .primitives
        .of_size(n)
        .filter(|(_, c)| c.th_partner.as_ref().is_none_or(|p| c.name < *p))
        .map(|(i, c)| {
            let orders = sym.map(|s| s[i].symmetric_saut.clone());
            json!({
                "class": c.name,
                "aut_order": c.aut.order.to_string(),
                "cardinality": c.cardinality.to_string(),
                "transpose_class": c.th_partner,
                "symmetric_subclasses": orders.as_ref().map(|o| o.len()),
                "symmetric_aut_orders": orders.as_ref().map(|o| o.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                "summary": orders.as_ref().map(|o| order_summary(o)),
            })
        })
        .collect();
    let full = assemble_full_classification(&lib.primitives, n)?;
    let shapes = full.shape_table(&lib.primitives.size_letters());
    let counts = lib.primitives.counts();
    let total = count_iw(&counts, n)?;
    let mut sym_totals = BTreeMap::new();
    if let Some(s) = sym {
        for (label, sign) in [("symmetric", Sign::Symmetric), ("antisymmetric", Sign::Antisymmetric)] {
            sym_totals.insert(label, count_sym_iw(&symmetric_counts(&lib.primitives, s, sign)?, n)?.to_string());
        }
    }
    let primitive = full.primitive_cardinality();
    let fraction = primitive_fraction(&primitive, &total);
    emit(
        fmt,
        || {
            let mut s = String::from("class |Aut| cardinality transpose symmetric SAut\n");
            for r in &rows {
                let field = |k: &str| match &r[k] {
                    serde_json::Value::Null => "-".to_string(),
                    serde_json::Value::String(x) => x.clone(),
                    v => v.to_string(),
                };
                s += &format!(
                    "{} {} {} {} {} {}\n",
                    field("class"),
                    field("aut_order"),
                    field("cardinality"),
                    field("transpose_class"),
                    field("symmetric_subclasses"),
                    field("summary")
                );
            }
            s += "\nshape TH H\n";
            for r in &shapes {
                s += &format!("{} {} {}\n", r.shape, r.th_count, r.h_count);
            }
            s += &format!("total {} {}\n\ncount {total}\nprimitive {primitive}\nprimitive fraction {fraction:.4}\n", full.th_count, full.h_count);
            for (k, v) in &sym_totals {
                s += &format!("{k} {v}\n");
            }
            s
        },
        json!({
            "size": n,
            "weight": args.weight,
            "primitive_classes": rows,
            "shapes": shapes,
            "h_classes": full.h_count,
            "th_classes": full.th_count,
            "count": total.to_string(),
            "primitive_count": primitive.to_string(),
            "primitive_fraction": fraction,
            "symmetric_counts": sym_totals,
        }),
    )
}

fn primitive_fraction(part: &BigUint, whole: &BigUint) -> f64 {
    use num_traits::ToPrimitive;
    if whole.bits() == 0 {
        return 0.0;
    }
    let scale = BigUint::from(1_000_000_000u64);
    (part * &scale / whole).to_f64().unwrap_or(0.0) / 1e9
}
