use std::collections::BTreeSet;

use surfcx::canon::canonical_signature;
use surfcx::cells::Dihedral;
use surfcx::census::{enumerate_cubulations, slot_pairings};
use surfcx::cubulation::{CubeGluing, Cubulation};
use surfcx::validate::{cubulation_is_closed_manifold, validate_cubulation};

fn all_one_cube_gluings() -> Vec<Cubulation> {
    let mut out = Vec::new();
    for pairing in slot_pairings(6) {
        for codes in 0..512u32 {
            let mut rows = vec![[None; 6]];
            for (i, &(a, b)) in pairing.iter().enumerate() {
                let sym = Dihedral::new(((codes >> (3 * i)) & 7) as u8).unwrap();
                rows[0][a] = Some(CubeGluing {
                    cube: 0,
                    face: b as u8,
                    sym,
                });
                rows[0][b] = Some(CubeGluing {
                    cube: 0,
                    face: a as u8,
                    sym: sym.inverse(),
                });
            }
            out.push(Cubulation::new(rows).unwrap());
        }
    }
    out
}

#[test]
fn cube_level_test_agrees_with_full_validation() {
    let all = all_one_cube_gluings();
    assert_eq!(all.len(), 7680);
    let mut closed = BTreeSet::new();
    for cub in &all {
        let full = validate_cubulation(cub).is_closed_manifold;
        assert_eq!(cubulation_is_closed_manifold(cub), full, "{:?}", cub.rows());
        if full {
            closed.insert(canonical_signature(cub));
        }
    }
    let census: BTreeSet<String> = enumerate_cubulations(1)
        .into_iter()
        .map(|r| r.signature)
        .collect();
    assert_eq!(
        closed, census,
        "orderly census equals brute force up to isomorphism"
    );
}
