//! Standard knots used by tests, benchmarks and the CLI.

use crate::presentation::{braid_to_wirtinger, parse_presentation, BraidWord, Presentation};
use crate::reps::{parse_rep_file, PermutationRep, RepFile};

pub const CONWAY_PRES: &str = include_str!("../fixtures/conway.pres");
pub const CONWAY_REP: &str = include_str!("../fixtures/conway_h.rep");
pub const UNKNOT_PRES: &str = include_str!("../fixtures/unknot.pres");

pub const TREFOIL_BRAID: &str = "2: 1 1 1";
pub const FIGURE_EIGHT_BRAID: &str = "3: 1 -2 1 -2";
/// Kinoshita-Terasaka knot 11n42.
pub const KINOSHITA_TERASAKA_BRAID: &str = "4: -1 -1 -1 -1 2 2 1 -3 2 2 -3 2 -3";
/// Conway knot 11n34.
pub const CONWAY_BRAID: &str = "4: -1 -1 2 -1 2 -1 3 -2 -2 3 3";

fn from_braid(text: &str) -> Presentation {
    braid_to_wirtinger(&text.parse::<BraidWord>().expect("fixture braid"))
}

pub fn unknot() -> Presentation {
    parse_presentation(UNKNOT_PRES).expect("fixture presentation")
}

pub fn trefoil() -> Presentation {
    from_braid(TREFOIL_BRAID)
}

pub fn figure_eight() -> Presentation {
    from_braid(FIGURE_EIGHT_BRAID)
}

pub fn kinoshita_terasaka() -> Presentation {
    from_braid(KINOSHITA_TERASAKA_BRAID)
}

/// The 11-generator Wirtinger presentation with meridian `s1`.
pub fn conway() -> Presentation {
    parse_presentation(CONWAY_PRES).expect("fixture presentation")
}

/// The known homomorphism of the Conway knot group onto a subgroup of `A_5`.
pub fn conway_rep() -> PermutationRep {
    match parse_rep_file(CONWAY_REP, &conway()).expect("fixture representation") {
        RepFile::Permutation(r) => r,
        RepFile::Matrix(_) => unreachable!("fixture uses cycle notation"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        let c = conway();
        assert_eq!((c.generator_count(), c.relator_count()), (11, 11));
        assert!(c.has_unit_xi());
        let h = conway_rep();
        assert!(h.verified);
        assert_eq!(h.degree, 5);
        assert!(h.images.iter().all(|p| p.sign() == 1));
        assert_eq!(unknot().relator_count(), 0);
        let kt = kinoshita_terasaka();
        assert_eq!(kt.generator_count(), kt.relator_count());
    }
}
