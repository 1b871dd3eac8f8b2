//! Checks of the printed Mathieu data: orders, transversal images, derived
//! elements and known misprints.

use serde::Serialize;

use super::{lookup, transversal_image_table, CatalogEntry, CatalogError, Recipe, M22_V_LITERAL};
use crate::construct::coprime_cyclic_transversal;
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A product formula evaluated both ways against the printed cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedCheck {
    pub element: String,
    pub formula: String,
    pub printed: String,
    /// The product with the leftmost factor acting first.
    pub computed: String,
    /// The product with the rightmost factor acting first.
    pub mirror: String,
    pub matches: bool,
    pub mirror_matches: bool,
}

pub fn check_formula(
    entry: &CatalogEntry,
    element: &str,
    formula: &str,
    printed: &str,
) -> Result<DerivedCheck, CatalogError> {
    let factors = entry.formula_factors(formula)?;
    let id = Permutation::identity(entry.degree)?;
    let computed = factors.iter().fold(id.clone(), |acc, f| acc.then(f));
    let mirror = factors.iter().rev().fold(id, |acc, f| acc.then(f));
    let printed = Permutation::parse(printed, Some(entry.degree))?;
    Ok(DerivedCheck {
        element: element.into(),
        formula: formula.into(),
        printed: printed.to_cycles(),
        matches: computed == printed,
        mirror_matches: mirror == printed,
        computed: computed.to_cycles(),
        mirror: mirror.to_cycles(),
    })
}

/// Every transversal element of `name` that has a formula. An element
/// matching under neither convention is a data error.
pub fn derived_element_check(name: &str) -> Result<Vec<DerivedCheck>, CatalogError> {
    let entry = lookup(name)?;
    let Recipe::Explicit { elements, .. } = &entry.recipe else {
        return Err(CatalogError::NoExplicitTransversal(entry.name));
    };
    let mut out = Vec::new();
    for e in elements {
        let Some(formula) = &e.formula else { continue };
        let check = check_formula(&entry, &e.name, formula, &e.cycles)?;
        if !check.matches && !check.mirror_matches {
            return Err(CatalogError::Data(format!(
                "{name}: {} = {formula} gives {} (or {}), printed {}",
                e.name, check.computed, check.mirror, check.printed
            )));
        }
        out.push(check);
    }
    Ok(out)
}

/// One printed claim next to the computed value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaperRow {
    pub claim: String,
    pub computed: String,
    pub paper: String,
    pub pass: bool,
}

fn row(
    claim: impl Into<String>,
    computed: impl Into<String>,
    paper: impl Into<String>,
    pass: bool,
) -> PaperRow {
    PaperRow {
        claim: claim.into(),
        computed: computed.into(),
        paper: paper.into(),
        pass,
    }
}

fn failed(claim: &str, paper: &str, e: CatalogError) -> PaperRow {
    row(claim, format!("error: {e}"), paper, false)
}

fn group_of(name: &str) -> Result<PermGroup, CatalogError> {
    lookup(name)?.group()
}

/// Every checkable claim about the Mathieu groups, one row each.
pub fn check_paper() -> Vec<PaperRow> {
    let mut rows = Vec::new();
    for (name, order) in [
        ("M11", 7920u128),
        ("M12", 95040),
        ("M22", 443520),
        ("M23", 10200960),
        ("M24", 244823040),
    ] {
        let claim = format!("{name} order");
        rows.push(match group_of(name) {
            Ok(g) => row(
                claim,
                g.order().to_string(),
                order.to_string(),
                g.order() == order,
            ),
            Err(e) => failed(&claim, &order.to_string(), e),
        });
    }

    for (name, points) in [("M12", 12usize), ("M22", 22), ("M24", 24)] {
        let claim = format!("{name} transversal distinct images");
        rows.push(match transversal_image_table(name) {
            Ok(t) => {
                let distinct = t.distinct_images();
                let pass = t.rows.len() == points && distinct == points;
                row(
                    claim,
                    format!("{distinct}/{} distinct", t.rows.len()),
                    format!("{points}/{points}"),
                    pass,
                )
            }
            Err(e) => failed(&claim, &points.to_string(), e),
        });
    }

    for name in ["M12", "M24"] {
        let entry = match lookup(name) {
            Ok(e) => e,
            Err(e) => {
                rows.push(failed(&format!("{name} derived elements"), "match", e));
                continue;
            }
        };
        let Recipe::Explicit { elements, .. } = &entry.recipe else {
            continue;
        };
        for e in elements {
            let Some(formula) = &e.formula else { continue };
            if formula == &e.name {
                continue;
            }
            let claim = format!("{name} {} = {}", e.name, formula.replace('*', "·"));
            rows.push(match check_formula(&entry, &e.name, formula, &e.cycles) {
                Ok(c) => row(
                    claim,
                    if c.matches {
                        "match".to_string()
                    } else {
                        c.computed
                    },
                    c.printed,
                    c.matches,
                ),
                Err(err) => failed(&claim, &e.cycles, err),
            });
        }
    }

    let literal = Permutation::parse(M22_V_LITERAL, Some(22));
    rows.push(match literal {
        Err(e) => row(
            "M22 V as printed is malformed",
            e.to_string(),
            M22_V_LITERAL,
            true,
        ),
        Ok(p) => row(
            "M22 V as printed is malformed",
            format!("parsed as {p}"),
            M22_V_LITERAL,
            false,
        ),
    });

    rows.push(stabilizer_row("M12", 12, Some(&["A", "B"]), 7920));
    rows.push(stabilizer_row("M22", 22, None, 20160));
    rows.push(stabilizer_row("M24", 24, Some(&["D", "E"]), 10200960));

    for (name, point, index) in [("M11", 11usize, 11u64), ("M23", 23, 23)] {
        let claim = format!("{name} element of order {index} outside the stabilizer of {point}");
        let result = (|| -> Result<u64, CatalogError> {
            let g = group_of(name)?;
            let h = g.point_stabilizer(point)?;
            let t = coprime_cyclic_transversal(&g, &h, 0)?;
            Ok(t.elements[0].perm.order())
        })();
        rows.push(match result {
            Ok(o) => row(
                claim,
                format!("found, order {o}"),
                index.to_string(),
                o == index,
            ),
            Err(e) => failed(&claim, &index.to_string(), e),
        });
    }

    let x2 = lookup("M24").and_then(|e| e.evaluate("D^3*F"));
    rows.push(match x2 {
        Ok(x) => row("M24 X2 order", x.order().to_string(), "12", x.order() == 12),
        Err(e) => failed("M24 X2 order", "12", e),
    });
    rows
}

fn stabilizer_row(name: &str, point: usize, gens: Option<&[&str]>, order: u128) -> PaperRow {
    let claim = match gens {
        Some(g) => format!("{name} stabilizer of {point} = <{}>", g.join(",")),
        None => format!("{name} stabilizer of {point} order"),
    };
    let result = (|| -> Result<(u128, bool), CatalogError> {
        let entry = lookup(name)?;
        let stab = entry.group()?.point_stabilizer(point)?;
        let same = match gens {
            Some(names) => {
                let gens = names
                    .iter()
                    .map(|n| entry.generator(n))
                    .collect::<Result<Vec<_>, _>>()?;
                PermGroup::new(gens)?.same_group(&stab)
            }
            None => true,
        };
        Ok((stab.order(), same))
    })();
    match result {
        Ok((o, same)) => {
            let computed = if same {
                o.to_string()
            } else {
                format!("{o}, different group")
            };
            row(claim, computed, order.to_string(), same && o == order)
        }
        Err(e) => failed(&claim, &order.to_string(), e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_formula() {
        let m12 = lookup("M12").unwrap();
        let c = check_formula(&m12, "I", "A^11", "()").unwrap();
        assert!(c.matches && c.mirror_matches);
    }

    #[test]
    fn m12_derived_elements_match_one_way_only() {
        let checks = derived_element_check("M12").unwrap();
        let x1 = checks.iter().find(|c| c.element == "X1").unwrap();
        assert!(x1.matches);
        assert!(!x1.mirror_matches);
    }
}
