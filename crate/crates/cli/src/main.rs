use std::collections::BTreeSet;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dynatomic::arith::{fmt_rational_short, parse_rational, FactorEffort, Rational, UniPoly};
use dynatomic::classify::{
    catalog, classify_with, family_density_bound, rational_periodic_scan, ClassifyOptions, FamilyId, GroupCatalog,
};
use dynatomic::dynamics::{dynatomic, milnor_coordinates, normal_form, on_curve, Curve, MapOverQ, NormalForm};
use dynatomic::error::Error;
use dynatomic::galois::identify;
use dynatomic::perm::{format_cycle_type, PermGroup};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dyn", version, about = "Dynatomic polynomials and their Galois groups for quadratic maps")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Table)]
    output: Output,
    /// Number of good primes to sample.
    #[arg(long, global = true, default_value_t = 300, value_parser = clap::value_parser!(u64).range(1..))]
    prime_budget: u64,
    /// Sample only primes below this bound.
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(3..))]
    prime_bound: u64,
    /// Pollard-Brent iteration cap for integer factoring. DYN_FACTOR_EFFORT
    /// overrides it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    factor_effort: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
}

#[derive(Args)]
struct FamilyArgs {
    /// no-auto or auto.
    #[arg(long, value_parser = parse_family)]
    family: FamilyId,
    /// Period.
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the Galois group of the n-th dynatomic polynomial at v.
    Classify {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true)]
        v: Rational,
    },
    /// Print a dynatomic polynomial.
    Dynatomic {
        #[arg(long, value_parser = parse_family, required_unless_present = "map")]
        family: Option<FamilyId>,
        #[arg(long)]
        n: usize,
        /// Specialize at this parameter.
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true, conflicts_with_all = ["symbolic", "map"])]
        v: Option<Rational>,
        /// The polynomial in Q[t][x] over the whole family.
        #[arg(long, conflicts_with = "map")]
        symbolic: bool,
        /// An explicit map over Q, for example "(x^2 - 1)/(2x)".
        #[arg(long, conflicts_with = "family")]
        map: Option<String>,
    },
    /// Inspect the candidate Galois groups of a family.
    Group {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Group label, or class-N for an unlabeled class.
        #[arg(long)]
        label: Option<String>,
        #[command(flatten)]
        view: GroupView,
    },
    /// Identify the Galois group of a polynomial by Frobenius sampling.
    Identify {
        /// Integer or rational coefficients, constant term first.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Candidate pool: the groups of this family and period.
        #[arg(long, value_parser = parse_family)]
        family: FamilyId,
        #[arg(long)]
        n: usize,
        /// Use every subgroup class instead of the realizable candidates.
        #[arg(long)]
        all: bool,
    },
    /// Rational periodic points of periods 1..=n-max.
    Scan {
        #[arg(long, value_parser = parse_family)]
        family: FamilyId,
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true)]
        v: Rational,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Milnor coordinates of a quadratic map and the curves through them.
    Milnor {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
    },
    /// Recognize a map as a member of one of the two families.
    NormalForm {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupView {
    /// Order, point degrees, root density and cycle types.
    #[arg(long)]
    info: bool,
    /// Subgroup classes of the ambient group.
    #[arg(long)]
    subgroups: bool,
    /// Density of primes with no periodic point over Q_p.
    #[arg(long)]
    density: bool,
    /// Degrees of the periodic points.
    #[arg(long)]
    degrees: bool,
}

fn parse_family(s: &str) -> Result<FamilyId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_q(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

impl Config {
    fn effort(&self) -> Result<FactorEffort, Error> {
        let rounds = match std::env::var("DYN_FACTOR_EFFORT") {
            Ok(s) => Some(s.trim().parse::<u64>().ok().filter(|&r| r > 0).ok_or_else(|| {
                Error::InvalidArgument(format!("DYN_FACTOR_EFFORT must be a positive integer, got {s:?}"))
            })?),
            Err(_) => self.factor_effort,
        };
        Ok(rounds.map(FactorEffort::with_rounds).unwrap_or_default())
    }

    fn options(&self) -> Result<ClassifyOptions, Error> {
        Ok(ClassifyOptions {
            prime_budget: self.prime_budget as usize,
            prime_bound: self.prime_bound,
            effort: self.effort()?,
        })
    }
}

/// A command's result: JSON for machines, aligned lines for people.
struct Report {
    json: Value,
    table: Vec<(String, String)>,
}

impl Report {
    fn new(json: Value) -> Self {
        Report { json, table: Vec::new() }
    }

    fn row(mut self, key: &str, value: impl ToString) -> Self {
        self.table.push((key.to_string(), value.to_string()));
        self
    }

    fn render(&self, output: Output) -> String {
        match output {
            Output::Json => serde_json::to_string_pretty(&self.json).expect("serializable"),
            Output::Table => {
                let width = self.table.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                self.table.iter().map(|(k, v)| format!("{k:<width$}  {v}")).collect::<Vec<_>>().join("\n")
            }
        }
    }
}

fn set_string<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Classify { fam, v } => {
            let r = classify_with(fam.family, fam.n, v, &cfg.options()?)?;
            let mut rep = Report::new(to_json(&r))
                .row("family", r.family)
                .row("n", r.n)
                .row("v", fmt_rational_short(&r.v))
                .row("status", to_json(&r.status).as_str().unwrap_or_default())
                .row("groups", set_string(r.labels()))
                .row("best match", r.best_match.as_deref().unwrap_or("-"))
                .row("branch", &r.evidence.branch);
            for m in &r.evidence.memberships {
                let pre = m.preimage.as_deref().map(|p| format!(" (preimage {p})")).unwrap_or_default();
                rep = rep.row(&format!("in image of {}", m.map), format!("{}{pre}", m.contains));
            }
            for c in &r.evidence.resolvents {
                rep = rep.row(&format!("resolvent {}", c.group), to_json(&c.outcome)["outcome"].as_str().unwrap_or(""));
            }
            for note in &r.evidence.notes {
                rep = rep.row("note", note);
            }
            Ok(rep)
        }
        Command::Dynatomic { family, n, v, symbolic, map } => {
            if let Some(src) = map {
                let f = MapOverQ::parse(src)?;
                let phi = dynatomic(&f, *n)?;
                return Ok(Report::new(json!({ "map": f.to_string(), "n": n, "polynomial": phi.to_string(),
                        "degree": phi.deg() }))
                .row("map", &f)
                .row("n", n)
                .row("degree", phi.deg())
                .row("polynomial", &phi));
            }
            let family = family.expect("clap requires family without map");
            match v {
                Some(v) if !symbolic => {
                    let phi = family.dynatomic_at(*n, v)?;
                    Ok(Report::new(json!({ "family": family, "n": n, "v": fmt_rational_short(v),
                            "polynomial": phi.to_string(), "degree": phi.deg(),
                            "coefficients": phi.coeffs().iter().map(fmt_rational_short).collect::<Vec<_>>() }))
                    .row("family", family)
                    .row("n", n)
                    .row("v", fmt_rational_short(v))
                    .row("degree", phi.deg())
                    .row("polynomial", &phi))
                }
                _ => {
                    let phi = family.generic_dynatomic(*n)?;
                    let dx = phi.degree_x().unwrap_or(0);
                    let coeffs: Vec<String> = (0..=dx).map(|i| phi.x_coeff(i).display_in("t")).collect();
                    let mut rep = Report::new(json!({ "family": family, "n": n, "polynomial": phi.to_string(),
                            "degree_x": dx, "x_coefficients": coeffs }))
                    .row("family", family)
                    .row("n", n)
                    .row("degree in x", dx);
                    for (i, c) in coeffs.iter().enumerate().rev() {
                        rep = rep.row(&format!("[x^{i}]"), c);
                    }
                    Ok(rep)
                }
            }
        }
        Command::Group { fam, label, view } => group(fam, label.as_deref(), view),
        Command::Identify { coeffs, family, n, all } => {
            let f = parse_coeffs(coeffs)?;
            let cat = catalog(*family, *n)?;
            let classes = if *all { cat.all_classes() } else { cat.set("P").to_vec() };
            let owned = cat.candidates(&classes);
            let pool: Vec<(String, &PermGroup)> = owned.iter().map(|(l, g)| (l.clone(), g)).collect();
            let r = identify(&f, &pool, cfg.prime_budget as usize, cfg.prime_bound)?;
            let consistent: Vec<&str> = r
                .candidates
                .iter()
                .filter(|c| to_json(&c.status).as_str() == Some("consistent"))
                .map(|c| c.label.as_str())
                .collect();
            let mut rep = Report::new(to_json(&r))
                .row("polynomial", &f)
                .row("sampled primes", r.sampled_primes)
                .row("skipped primes", r.skipped_primes)
                .row("best match", r.best_match.as_deref().unwrap_or("-"))
                .row("consistent", set_string(&consistent));
            for c in r.candidates.iter().filter(|c| consistent.contains(&c.label.as_str())) {
                rep = rep.row(&format!("L1 {}", c.label), format!("{:.4}", c.l1_distance));
            }
            Ok(rep.row("note", &r.note))
        }
        Command::Scan { family, v, n_max } => {
            let rows = rational_periodic_scan(*family, v, *n_max, &cfg.effort()?)?;
            let mut rep =
                Report::new(json!({ "family": family, "v": fmt_rational_short(v), "periods": to_json(&rows) }));
            for row in &rows {
                rep = rep.row(&format!("period {}", row.n), set_string(&row.points));
            }
            Ok(rep)
        }
        Command::Milnor { map } => {
            let f = MapOverQ::parse(map)?;
            let m = milnor_coordinates(&f)?;
            let curves = [("C1", Curve::C1), ("C2", Curve::C2), ("S", Curve::SymmetryLocus)];
            let on: Vec<&str> = curves.iter().filter(|(_, c)| on_curve(&m, *c)).map(|(n, _)| *n).collect();
            Ok(Report::new(json!({ "map": f.to_string(), "r": fmt_rational_short(&m.r),
                    "s": fmt_rational_short(&m.s), "curves": on }))
            .row("map", &f)
            .row("r", fmt_rational_short(&m.r))
            .row("s", fmt_rational_short(&m.s))
            .row("on curves", set_string(on)))
        }
        Command::NormalForm { map } => {
            let f = MapOverQ::parse(map)?;
            let nf = normal_form(&f)?;
            let (kind, v) = match &nf {
                NormalForm::NoAuto { v } => ("no-auto", fmt_rational_short(v)),
                NormalForm::Auto { v } => ("auto", fmt_rational_short(v)),
                NormalForm::NotInScope => ("not-in-scope", "-".into()),
            };
            Ok(Report::new(json!({ "map": f.to_string(), "normal_form": to_json(&nf) }))
                .row("map", &f)
                .row("family", kind)
                .row("v", v))
        }
    }
}

fn parse_coeffs(s: &str) -> Result<UniPoly, Error> {
    let coeffs = s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    Ok(UniPoly::from_coeffs(coeffs))
}

fn group(fam: &FamilyArgs, label: Option<&str>, view: &GroupView) -> Result<Report, Error> {
    let cat = catalog(fam.family, fam.n)?;
    let class = label.map(|l| cat.resolve(l)).transpose()?;
    let target: Vec<usize> = match class {
        Some(c) => vec![c],
        None => cat.set("P").to_vec(),
    };
    if view.info {
        let c = class.ok_or_else(|| Error::InvalidArgument("--info needs --label".into()))?;
        return Ok(info(cat, c));
    }
    if view.subgroups {
        return Ok(subgroups(cat, class));
    }
    if view.density {
        let d = match class {
            Some(c) => {
                let s = cat.summary(c);
                json!({ "family": fam.family, "n": fam.n, "no_root_density":
                    fmt_rational_short(&(Rational::from_integer(1.into()) - &s.root_density)),
                    "lower_bound": false, "groups": [to_json(&s)] })
            }
            None => to_json(&family_density_bound(fam.family, fam.n)?),
        };
        let mut rep = Report::new(d.clone()).row("no-root density", d["no_root_density"].as_str().unwrap_or(""));
        rep = rep.row("bound over candidates", &d["lower_bound"]);
        for g in d["groups"].as_array().into_iter().flatten() {
            rep = rep.row(
                &format!("root density {}", g["label"].as_str().unwrap_or("")),
                g["root_density"].as_str().unwrap_or(""),
            );
        }
        return Ok(rep);
    }
    let degrees: BTreeSet<usize> = target.iter().flat_map(|&c| cat.summary(c).degrees).collect();
    let labels: Vec<String> = target.iter().map(|&c| cat.name(c)).collect();
    Ok(Report::new(json!({ "family": fam.family, "n": fam.n, "groups": labels, "degrees": degrees }))
        .row("groups", set_string(&labels))
        .row("degrees", set_string(&degrees)))
}

fn info(cat: &GroupCatalog, c: usize) -> Report {
    let s = cat.summary(c);
    let g = cat.lattice().representative(c);
    let dist = g.cycle_type_distribution();
    let types: Vec<Value> =
        dist.0.iter().map(|(t, k)| json!({ "cycle_type": format_cycle_type(t), "count": k })).collect();
    let gens: Vec<String> = g.generators().iter().map(|p| p.to_string()).collect();
    let mut rep = Report::new(json!({
        "label": s.label, "aliases": cat.aliases(c), "order": s.order, "degrees": s.degrees,
        "root_density": fmt_rational_short(&s.root_density), "generators": gens, "cycle_types": types,
    }))
    .row("label", &s.label)
    .row("order", s.order)
    .row("degrees", set_string(&s.degrees))
    .row("root density", fmt_rational_short(&s.root_density))
    .row("generators", gens.join(" "));
    for (t, k) in &dist.0 {
        rep = rep.row(&format!("type {}", format_cycle_type(t)), k);
    }
    rep
}

fn subgroups(cat: &GroupCatalog, within: Option<usize>) -> Report {
    let lat = cat.lattice();
    let classes: Vec<usize> = match within {
        Some(top) => (0..lat.len()).filter(|&i| lat.contained(i, top)).collect(),
        None => (0..lat.len()).collect(),
    };
    let rows: Vec<Value> = classes
        .iter()
        .map(|&i| {
            json!({ "class": i, "name": cat.name(i), "order": lat.order(i),
                "root_density": fmt_rational_short(&cat.summary(i).root_density) })
        })
        .collect();
    let mut rep = Report::new(json!({ "count": classes.len(), "classes": rows })).row("classes", classes.len());
    for &i in &classes {
        rep = rep.row(
            &format!("class-{i}"),
            format!(
                "{:<8} order {:>3}  root density {}",
                cat.name(i),
                lat.order(i),
                fmt_rational_short(&cat.summary(i).root_density)
            ),
        );
    }
    rep
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout(), "{}", report.render(cli.config.output));
            ExitCode::SUCCESS
        }
        Err(e) => {
            let err = json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{}", serde_json::to_string(&err).expect("serializable"));
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
