use std::fmt;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use splitmerge::correspond::{
    domain_to_graph, domain_to_vine, graph_to_domain, graph_to_vine, vine_to_domain, vine_to_graph,
};
use splitmerge::domain::{
    bottom_alternatives, find_condorcet_cycle, first_rank_distribution, is_bspd, richness_direct,
};
use splitmerge::enumerate::{catalog, classify_labeled, count};
use splitmerge::io::{self, Kind, Structure};
use splitmerge::lattice::{
    automorphism_group_order, find_triangle, is_b3_free, is_extremal_lattice, lattice_to_matrix,
    lattice_to_vine, matrix_to_lattice, validate_lattice, vine_to_lattice,
};
use splitmerge::species::{check_proximity, transport};
use splitmerge::vine::{chain_counts_from_atoms, is_c_vine, is_d_vine, richness_via_vine};
use splitmerge::{
    DomainSpecies, Error, MatGraphSpecies, MatLabeledGraph, PreferenceDomain, RegularVine,
    Species, ValidationReport, VineSpecies, Violation,
};

use crate::{Cli, Command, CountMode, Format, Outcome, Via};

#[derive(Debug)]
pub enum CliError {
    Io(String, std::io::Error),
    Lib(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{p}: {e}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Io(..) => 2,
        CliError::Lib(Error::Malformed(_) | Error::Argument(_) | Error::CapExceeded { .. }) => 2,
        CliError::Lib(Error::Invalid(_) | Error::Internal(_)) => 1,
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Verify { path } => verify(cli, &load(cli, path)?),
        Command::Convert { path, to, via } => {
            let s = load(cli, path)?;
            let to: Kind = to.parse()?;
            let out = convert(&s, to, *via)?;
            print!("{}", render(&out, cli.format)?);
            Ok(Outcome::Ok)
        }
        Command::Analyze { path } => analyze(cli, &load(cli, path)?),
        Command::Count { n, mode } => count_cmd(cli, *n, *mode),
        Command::Catalog { n, out } => catalog_cmd(cli, *n, out),
        Command::Selftest => Ok(crate::selftest::run()),
    }
}

fn load(cli: &Cli, path: &Path) -> Result<Structure> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    let s = io::parse(&text)?;
    if let Some(k) = &cli.kind {
        let want: Kind = k.parse()?;
        if want != s.kind() {
            return Err(Error::Malformed(format!("expected a {want}, found a {}", s.kind())).into());
        }
    }
    Ok(s)
}

fn render(s: &Structure, f: Format) -> Result<String> {
    Ok(match f {
        Format::Json => io::to_json(s),
        Format::Text => io::to_text(s),
        Format::Dot => io::to_dot(s)?,
    })
}

/// The three species-level representations.
enum Core {
    Graph(MatLabeledGraph),
    Vine(RegularVine),
    Domain(PreferenceDomain),
}

fn to_core(s: &Structure) -> Result<Core> {
    Ok(match s {
        Structure::MatGraph(g) => Core::Graph(g.clone()),
        Structure::Vine(v) => Core::Vine(v.clone()),
        Structure::Domain(d) => Core::Domain(d.clone()),
        Structure::Lattice(l) => Core::Vine(lattice_to_vine(l)?),
        Structure::Matrix(m) => Core::Vine(lattice_to_vine(&matrix_to_lattice(m))?),
    })
}

fn core_to(c: &Core, to: Kind, via: Via) -> Result<Core> {
    use Core::*;
    let t = via == Via::Transport;
    Ok(match (c, to) {
        (Graph(g), Kind::MatGraph) => Graph(g.clone()),
        (Vine(v), Kind::Vine) => Vine(v.clone()),
        (Domain(d), Kind::Domain) => Domain(d.clone()),
        (Graph(g), Kind::Vine) if t => Vine(transport::<MatGraphSpecies, VineSpecies>(g)?),
        (Graph(g), Kind::Vine) => Vine(graph_to_vine(g)?),
        (Graph(g), Kind::Domain) if t => Domain(transport::<MatGraphSpecies, DomainSpecies>(g)?),
        (Graph(g), Kind::Domain) => Domain(graph_to_domain(g)?),
        (Vine(v), Kind::MatGraph) if t => Graph(transport::<VineSpecies, MatGraphSpecies>(v)?),
        (Vine(v), Kind::MatGraph) => Graph(vine_to_graph(v)?),
        (Vine(v), Kind::Domain) if t => Domain(transport::<VineSpecies, DomainSpecies>(v)?),
        (Vine(v), Kind::Domain) => Domain(vine_to_domain(v)?),
        (Domain(d), Kind::MatGraph) if t => Graph(transport::<DomainSpecies, MatGraphSpecies>(d)?),
        (Domain(d), Kind::MatGraph) => Graph(domain_to_graph(d)?),
        (Domain(d), Kind::Vine) if t => Vine(transport::<DomainSpecies, VineSpecies>(d)?),
        (Domain(d), Kind::Vine) => Vine(domain_to_vine(d)?),
        (c, Kind::Lattice | Kind::Matrix) => core_to(c, Kind::Vine, via)?,
    })
}

fn convert(s: &Structure, to: Kind, via: Via) -> Result<Structure> {
    if s.kind() == to {
        return Ok(s.clone());
    }
    let c = core_to(&to_core(s)?, to, via)?;
    Ok(match (c, to) {
        (Core::Graph(g), _) => Structure::MatGraph(g),
        (Core::Domain(d), _) => Structure::Domain(d),
        (Core::Vine(v), Kind::Lattice) => Structure::Lattice(vine_to_lattice(&v)?),
        (Core::Vine(v), Kind::Matrix) => Structure::Matrix(lattice_to_matrix(&vine_to_lattice(&v)?)),
        (Core::Vine(v), _) => Structure::Vine(v),
    })
}

fn base_report(s: &Structure) -> Result<ValidationReport> {
    let n = s.ground().len();
    Ok(match s {
        Structure::MatGraph(g) => MatGraphSpecies::validate(g),
        Structure::Vine(v) => VineSpecies::validate(v),
        Structure::Domain(d) => DomainSpecies::validate(d),
        Structure::Lattice(l) => {
            let mut r = validate_lattice(l);
            if r.is_valid() {
                let e = is_extremal_lattice(l, n)?;
                if let Some(w) = is_b3_free(l)? {
                    let shown: Vec<String> = w.iter().map(|&m| l.ground().show(m)).collect();
                    r.push("lattice.b3", format!("induced B(3): {}", shown.join(" ")));
                }
                if e.size != e.expected_size {
                    r.push("lattice.size", format!("{} elements, expected {}", e.size, e.expected_size));
                }
                if e.join_irreducibles > n {
                    r.push("lattice.join_irreducibles", format!("{} join-irreducibles", e.join_irreducibles));
                }
            }
            r
        }
        Structure::Matrix(m) => {
            let mut r = ValidationReport::ok();
            if let Some(t) = find_triangle(m) {
                r.push(
                    "matrix.triangle",
                    format!("rows {:?}, columns {:?}", t.rows.map(|i| m.rows().label(i).to_string()), t.columns),
                );
            }
            let want = 1 + n + n * n.saturating_sub(1) / 2;
            if m.columns().len() != want {
                r.push("matrix.size", format!("{} columns, expected {want}", m.columns().len()));
            }
            r
        }
    })
}

/// Direct maps and transport agree with each other and invert.
fn strict_checks(s: &Structure, r: &mut ValidationReport) -> Result<()> {
    let core = to_core(s)?;
    let kinds = [Kind::MatGraph, Kind::Vine, Kind::Domain];
    let origin = match &core {
        Core::Graph(_) => Kind::MatGraph,
        Core::Vine(_) => Kind::Vine,
        Core::Domain(_) => Kind::Domain,
    };
    let same = |a: &Core, b: &Core| match (a, b) {
        (Core::Graph(x), Core::Graph(y)) => x == y,
        (Core::Vine(x), Core::Vine(y)) => x == y,
        (Core::Domain(x), Core::Domain(y)) => x == y,
        _ => false,
    };
    for &k in kinds.iter().filter(|&&k| k != origin) {
        let d = core_to(&core, k, Via::Direct)?;
        let t = core_to(&core, k, Via::Transport)?;
        if !same(&d, &t) {
            r.push("strict.transport", format!("direct and transported {k} differ"));
        }
        if !same(&core_to(&d, origin, Via::Direct)?, &core) {
            r.push("strict.round_trip", format!("{origin} -> {k} -> {origin} is not the identity"));
        }
    }
    let prox = match &core {
        Core::Graph(g) if g.n() >= 2 => Some(check_proximity::<MatGraphSpecies>(g)?),
        Core::Vine(v) if v.n() >= 2 => Some(check_proximity::<VineSpecies>(v)?),
        Core::Domain(d) if d.n() >= 2 => Some(check_proximity::<DomainSpecies>(d)?),
        _ => None,
    };
    if prox == Some(false) {
        r.push("strict.proximity", "split halves are not compatible");
    }
    Ok(())
}

fn verify(cli: &Cli, s: &Structure) -> Result<Outcome> {
    let mut r = base_report(s)?;
    if cli.strict && r.is_valid() {
        strict_checks(s, &mut r)?;
    }
    let mut notes = Vec::new();
    if let Structure::Domain(d) = s {
        if let Some(c) = find_condorcet_cycle(d) {
            notes.push(format!("Condorcet cycle on {}", c.triple.join("")));
        }
    }
    let n = s.ground().len();
    match cli.format {
        Format::Json => {
            let v = json!({
                "kind": s.kind().name(),
                "n": n,
                "valid": r.is_valid(),
                "violations": r.violations.iter().map(violation_json).collect::<Vec<_>>(),
                "notes": notes,
            });
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        }
        _ => {
            if r.is_valid() {
                println!("valid {} on {n} elements", s.kind());
            } else {
                println!("invalid {} on {n} elements", s.kind());
                for v in &r.violations {
                    println!("  {v}");
                }
            }
            for note in &notes {
                println!("  note: {note}");
            }
        }
    }
    Ok(if r.is_valid() { Outcome::Ok } else { Outcome::Failed })
}

fn violation_json(v: &Violation) -> Value {
    json!({"axiom": v.axiom, "witness": v.witness})
}

fn analyze(cli: &Cli, s: &Structure) -> Result<Outcome> {
    let v = match to_core(s)? {
        Core::Vine(v) => v,
        c => match core_to(&c, Kind::Vine, Via::Direct)? {
            Core::Vine(v) => v,
            _ => unreachable!(),
        },
    };
    let d = vine_to_domain(&v)?;
    let richness = richness_via_vine(&v)?;
    let first = chain_counts_from_atoms(&v)?;
    let agree = richness == richness_direct(&d) && first == first_rank_distribution(&d);
    let bottoms: Vec<String> = bottom_alternatives(&d).into_iter().collect();
    let axis = is_bspd(&d);
    let dv = is_d_vine(&v)?;
    let cv = is_c_vine(&v)?;
    let aut = automorphism_group_order(&v)?;
    match cli.format {
        Format::Json => {
            let out = json!({
                "kind": s.kind().name(),
                "n": v.n(),
                "richness": richness,
                "first_rank": first,
                "bottoms": bottoms,
                "d_vine": dv,
                "c_vine": cv,
                "bspd_axis": axis,
                "automorphisms": aut,
                "vine_and_domain_agree": agree,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        _ => {
            println!("n: {}", v.n());
            println!("richness: {richness}");
            let fr: Vec<String> = first.iter().map(|(k, c)| format!("{k}:{c}")).collect();
            println!("first ranks: {}", fr.join(" "));
            println!("bottoms: {}", bottoms.join(" "));
            println!("D-vine: {dv}");
            println!("C-vine: {cv}");
            match &axis {
                Some(a) => println!("single-peaked axis: {}", a.join(" ")),
                None => println!("single-peaked axis: none"),
            }
            println!("automorphisms: {aut}");
            if !agree {
                println!("warning: vine and domain statistics differ");
            }
        }
    }
    Ok(if agree { Outcome::Ok } else { Outcome::Failed })
}

fn print_table(t: &count::CountTable, f: Format) {
    match f {
        Format::Json => println!("{}", serde_json::to_string(t).expect("json")),
        _ => println!(
            "n={} labeled={} unlabeled={} symmetric={} asymmetric={}",
            t.n, t.labeled, t.unlabeled, t.symmetric, t.asymmetric
        ),
    }
}

fn count_cmd(cli: &Cli, n: usize, mode: CountMode) -> Result<Outcome> {
    match mode {
        CountMode::Formula => print_table(&count::formula_table(n)?, cli.format),
        CountMode::Recursive => print_table(&count::recursive_table(n)?, cli.format),
        CountMode::Generate => {
            splitmerge::enumerate::check_cap(n)?;
            eprintln!("generating all labeled vines on {n} elements");
            let classes = classify_labeled(n)?;
            let labeled: u64 = classes.iter().map(|c| c.members).sum();
            let sym = classes.iter().filter(|c| c.automorphisms == 2).count();
            let t = count::CountTable {
                n,
                labeled: labeled.to_string(),
                unlabeled: classes.len().to_string(),
                symmetric: sym.to_string(),
                asymmetric: (classes.len() - sym).to_string(),
            };
            print_table(&t, cli.format);
            let f = count::formula_table(n)?;
            if f != t {
                eprintln!("mismatch against the formulas");
                print_table(&f, cli.format);
                return Ok(Outcome::Failed);
            }
            eprintln!("matches the formulas");
        }
    }
    Ok(Outcome::Ok)
}

fn catalog_cmd(cli: &Cli, n: usize, out: &Path) -> Result<Outcome> {
    if n > splitmerge::enumerate::GENERATE_CAP {
        return Err(Error::CapExceeded {
            what: "catalog size",
            value: n,
            cap: splitmerge::enumerate::GENERATE_CAP,
        }
        .into());
    }
    let entries = catalog::build_catalog(n)?;
    fs::create_dir_all(out).map_err(|e| CliError::Io(out.display().to_string(), e))?;
    let jsonl = out.join(format!("catalog_n{n}.jsonl"));
    let txt = out.join(format!("catalog_n{n}.txt"));
    fs::write(&jsonl, catalog::render_jsonl(&entries)).map_err(|e| CliError::Io(jsonl.display().to_string(), e))?;
    fs::write(&txt, catalog::render_report(&entries)).map_err(|e| CliError::Io(txt.display().to_string(), e))?;
    match cli.format {
        Format::Json => println!(
            "{}",
            json!({"n": n, "classes": entries.len(), "jsonl": jsonl.display().to_string(), "report": txt.display().to_string()})
        ),
        _ => println!("{} classes written to {} and {}", entries.len(), jsonl.display(), txt.display()),
    }
    Ok(Outcome::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use splitmerge::samples::intro_vine;

    #[test]
    fn exit_codes_follow_error_kind() {
        assert_eq!(exit_code(&Error::Malformed("x".into()).into()), 2);
        assert_eq!(exit_code(&Error::CapExceeded { what: "n", value: 9, cap: 7 }.into()), 2);
        assert_eq!(exit_code(&Error::Internal("x".into()).into()), 1);
    }

    #[test]
    fn strict_checks_accept_a_valid_vine() {
        let s = Structure::Vine(intro_vine());
        let mut r = base_report(&s).unwrap();
        strict_checks(&s, &mut r).unwrap();
        assert!(r.is_valid());
    }

    #[test]
    fn conversion_to_own_kind_is_identity() {
        let s = Structure::Vine(intro_vine());
        assert_eq!(convert(&s, Kind::Vine, Via::Direct).unwrap(), s);
    }
}
