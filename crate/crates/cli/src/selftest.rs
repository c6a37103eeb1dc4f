use splitmerge::correspond::{
    domain_to_graph, domain_to_vine, graph_to_domain, graph_to_vine, vine_to_domain, vine_to_graph,
};
use splitmerge::domain::{is_bspd, richness_direct};
use splitmerge::enumerate::{class_representatives, count};
use splitmerge::lattice::{is_extremal_lattice, vine_to_lattice};
use splitmerge::samples::*;
use splitmerge::species::transport;
use splitmerge::{DomainSpecies, MatGraphSpecies, VineSpecies};

use crate::Outcome;

fn check(name: &str, ok: bool, failed: &mut bool) {
    println!("{} {name}", if ok { "ok  " } else { "FAIL" });
    *failed |= !ok;
}

pub fn run() -> Outcome {
    let mut failed = false;
    for (label, g, v, d) in [
        ("four-element example", intro_graph(), intro_vine(), intro_domain()),
        ("five-element example", five_graph(), five_vine(), five_domain()),
    ] {
        let direct = graph_to_vine(&g).ok() == Some(v.clone())
            && vine_to_graph(&v).ok() == Some(g.clone())
            && graph_to_domain(&g).ok() == Some(d.clone())
            && domain_to_graph(&d).ok() == Some(g.clone())
            && vine_to_domain(&v).ok() == Some(d.clone())
            && domain_to_vine(&d).ok() == Some(v.clone());
        check(&format!("{label}: direct maps"), direct, &mut failed);
        let moved = transport::<MatGraphSpecies, VineSpecies>(&g).ok() == Some(v.clone())
            && transport::<VineSpecies, DomainSpecies>(&v).ok() == Some(d.clone())
            && transport::<DomainSpecies, MatGraphSpecies>(&d).ok() == Some(g.clone());
        check(&format!("{label}: transport"), moved, &mut failed);
    }
    check(
        "four-element D-vine domain is single-peaked with richness 3",
        is_bspd(&d41()).is_some() && richness_direct(&d41()) == 3,
        &mut failed,
    );
    check(
        "four-element C-vine domain is not single-peaked",
        is_bspd(&d42()).is_none() && richness_direct(&d42()) == 2,
        &mut failed,
    );
    let classes_ok = (1..=6).all(|n| {
        let reps = class_representatives(n).map(|c| c.len()).unwrap_or(0);
        count::unlabeled_count(n).map(|c| c.to_string()).ok() == Some(reps.to_string())
    });
    check("class counts for n <= 6 match the formula", classes_ok, &mut failed);
    let lattice_ok = vine_to_lattice(&five_vine())
        .and_then(|l| is_extremal_lattice(&l, 5))
        .map(|r| r.extremal)
        .unwrap_or(false);
    check("five-element vine gives an extremal lattice", lattice_ok, &mut failed);
    if failed {
        Outcome::Failed
    } else {
        Outcome::Ok
    }
}
