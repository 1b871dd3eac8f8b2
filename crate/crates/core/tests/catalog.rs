mod common;

use ogs_core::catalog::{self, CatalogError, LISTED};
use ogs_core::ogs::Verification;
use ogs_core::{OrderedGeneratingSystem, Permutation};

#[test]
fn exported_data_file_is_current() {
    let stored = include_str!("../data/catalog.json");
    assert_eq!(
        catalog::export_json().unwrap(),
        stored,
        "regenerate with `ogs catalog --json`"
    );
}

#[test]
fn exported_entries_reload() {
    let rows: Vec<catalog::ExportedEntry> =
        serde_json::from_str(include_str!("../data/catalog.json")).unwrap();
    assert_eq!(rows.len(), LISTED.len());
    for row in rows {
        let mut ogs = OrderedGeneratingSystem::from_file(&row.ogs).unwrap();
        assert_eq!(ogs.verification(), Verification::None);
        assert!(
            ogs.verify_structural().unwrap().ok,
            "{}",
            row.ogs.group.name
        );
        assert_eq!(ogs.bounds_product(), row.expected_order as u128);
        ogs.verify(ogs_core::ogs::Method::Structural, 0).unwrap();
        assert_eq!(ogs.verification(), Verification::Structural);
    }
}

#[test]
fn orders_agree_with_orbit_stabilizer() {
    for name in LISTED {
        let g = catalog::lookup(name).unwrap().group().unwrap();
        let mut h = g.clone();
        let mut product = 1u128;
        for point in 1..=g.degree() {
            if h.is_trivial() {
                break;
            }
            product *= h.orbit_len(point).unwrap() as u128;
            h = h.point_stabilizer(point).unwrap();
        }
        assert_eq!(product, g.order(), "{name}");
    }
}

#[test]
fn small_orders_agree_with_closure() {
    for name in LISTED {
        let entry = catalog::lookup(name).unwrap();
        if entry.expected_order > 100_000 {
            continue;
        }
        let g = entry.group().unwrap();
        assert_eq!(
            common::group_closure(&g).len() as u128,
            entry.expected_order,
            "{name}"
        );
    }
}

#[test]
fn stabilizers_match_named_subgroups() {
    let m12 = catalog::lookup("M12").unwrap();
    let ab = ogs_core::PermGroup::new(vec![
        m12.generator("A").unwrap(),
        m12.generator("B").unwrap(),
    ])
    .unwrap();
    let stab = m12.group().unwrap().point_stabilizer(12).unwrap();
    assert!(ab.same_group(&stab));
    assert_eq!(stab.order(), 7920);

    let m22 = catalog::lookup("M22").unwrap().group().unwrap();
    assert_eq!(m22.point_stabilizer(22).unwrap().order(), 20160);

    let m24 = catalog::lookup("M24").unwrap();
    let de = ogs_core::PermGroup::new(vec![
        m24.generator("D").unwrap(),
        m24.generator("E").unwrap(),
    ])
    .unwrap();
    assert!(de.same_group(&m24.group().unwrap().point_stabilizer(24).unwrap()));
}

#[test]
fn derived_elements_need_left_to_right_products() {
    for group in ["M12", "M24"] {
        for c in catalog::derived_element_check(group).unwrap() {
            assert!(c.matches, "{group} {}", c.element);
            if c.formula.contains('*') {
                assert!(
                    !c.mirror_matches,
                    "{group} {} also matches mirrored",
                    c.element
                );
            }
        }
    }
}

#[test]
fn image_tables_are_injective() {
    for (name, n) in [("M12", 12), ("M22", 22), ("M24", 24)] {
        let t = catalog::transversal_image_table(name).unwrap();
        assert_eq!(t.rows.len(), n);
        assert!(t.is_injective());
    }
    assert!(matches!(
        catalog::transversal_image_table("A5"),
        Err(CatalogError::NoExplicitTransversal(_))
    ));
}

#[test]
fn paper_checks_all_pass() {
    let rows = catalog::check_paper();
    assert_eq!(rows.len(), 20);
    for r in rows {
        assert!(r.pass, "{}: {} vs {}", r.claim, r.computed, r.paper);
    }
}

#[test]
fn catalog_rows_pass() {
    for row in catalog::verify_catalog() {
        assert!(row.passed(), "{row:?}");
    }
}

#[test]
fn family_names() {
    assert_eq!(catalog::lookup("A7").unwrap().expected_order, 2520);
    assert_eq!(catalog::lookup("S6").unwrap().expected_order, 720);
    assert_eq!(catalog::lookup("C100").unwrap().expected_order, 100);
    assert_eq!(catalog::lookup("PSL2_17").unwrap().expected_order, 2448);
    for bad in ["M13", "A07", "S", "C0", "PSL2_6", "PSL2_9", "PSL2_", "foo"] {
        assert!(
            matches!(catalog::lookup(bad), Err(CatalogError::Unknown(_))),
            "{bad}"
        );
    }
}

#[test]
fn literal_misprints_do_not_parse() {
    assert!(Permutation::parse(catalog::M22_V_LITERAL, Some(22)).is_err());
    assert!(Permutation::parse(catalog::M12_X3_LITERAL, Some(12)).is_err());
}

#[test]
fn seeds_change_nothing_about_validity() {
    for seed in [1, 7, 42] {
        let (g, ogs) = catalog::build_with_seed("M22", seed).unwrap();
        assert_eq!(ogs.bounds_product(), g.order());
        assert!(ogs.verify_structural().unwrap().ok);
    }
}

#[test]
fn readme_example() {
    let (_, ogs) = catalog::build("M12").unwrap();
    let g = Permutation::parse("(2,3,12)(1,8,4)(5,7,10)(6,9,11)", Some(12)).unwrap();
    let e = ogs.factor(&g).unwrap();
    assert_eq!(ogs.word(&e).unwrap(), g);
    let r = ogs.rank(&e).unwrap();
    assert_eq!(ogs.unrank(r).unwrap(), e);
}
