//! Parsing of map, init and statistic flags.

use rowmotion_core::lab::{Setting, Statistic};
use rowmotion_core::rational;
use rowmotion_core::{Element, LabeledArray, Poset, TogglePlan};

use crate::Failure;

/// `rowmotion`, `promotion`, or `plan:` followed by comma-separated elements.
/// An element is `i:j`, or one of `w,x,y,z` on `[2]×[2]`.
pub fn parse_map(p: &Poset, s: &str) -> Result<TogglePlan, Failure> {
    match s {
        "rowmotion" => Ok(TogglePlan::Rowmotion),
        "promotion" => Ok(TogglePlan::Promotion),
        _ => {
            let body = s.strip_prefix("plan:").ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown map {s:?}; expected rowmotion, promotion or plan:<elements>"
                ))
            })?;
            let xs = body
                .split(',')
                .map(|t| parse_element(p, t.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let plan = TogglePlan::Custom(xs);
            plan.resolve(p).map_err(Failure::from_input)?;
            Ok(plan)
        }
    }
}

pub fn parse_element(p: &Poset, t: &str) -> Result<Element, Failure> {
    if p.dims() == Some((2, 2)) {
        if let Some(k) = ["w", "x", "y", "z"].iter().position(|&n| n == t) {
            return Ok(Element(k));
        }
    }
    let bad = || Failure::Usage(format!("bad element {t:?}; expected i:j"));
    let (i, j) = t.split_once(':').ok_or_else(bad)?;
    let i = i.parse().map_err(|_| bad())?;
    let j = j.parse().map_err(|_| bad())?;
    p.element_at(i, j).map_err(Failure::from_input)
}

/// Comma-separated rationals in row-major order `(1,1), (2,1), ..., (a,b)`.
pub fn parse_init(p: &Poset, setting: Setting, s: &str) -> Result<LabeledArray, Failure> {
    let profile = setting
        .profile()
        .ok_or_else(|| Failure::Usage("--init applies to the pl-unit, pl-homog and birational settings".into()))?;
    let values = s
        .split(',')
        .map(|t| rational::parse(t.trim()).map_err(Failure::from_input))
        .collect::<Result<Vec<_>, _>>()?;
    LabeledArray::with_profile(p, profile, values).map_err(Failure::from_input)
}

/// `cardinality`, `file:k`, `element:i:j`, `opposite:i:j`, or
/// `custom:c1,...,cN` with coefficients in row-major order.
pub fn parse_stat(p: &Poset, s: &str) -> Result<Statistic, Failure> {
    if s == "cardinality" {
        return Ok(Statistic::cardinality(p));
    }
    let (kind, arg) = s
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("unknown statistic {s:?}")))?;
    match kind {
        "file" => {
            let k = arg
                .parse()
                .map_err(|_| Failure::Usage(format!("bad file index {arg:?}")))?;
            Statistic::file(p, k).map_err(Failure::from_input)
        }
        "element" => Ok(Statistic::element(p, parse_element(p, arg)?)),
        "opposite" => Statistic::opposite_pair(p, parse_element(p, arg)?).map_err(Failure::from_input),
        "custom" => {
            let coefficients = arg
                .split(',')
                .map(|t| rational::parse(t.trim()).map_err(Failure::from_input))
                .collect::<Result<Vec<_>, _>>()?;
            if coefficients.len() != p.size() {
                return Err(Failure::Usage(format!(
                    "custom statistic needs {} coefficients, got {}",
                    p.size(),
                    coefficients.len()
                )));
            }
            Ok(Statistic::custom("custom", coefficients))
        }
        _ => Err(Failure::Usage(format!("unknown statistic {s:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Poset {
        Poset::rect(2, 2).unwrap()
    }

    #[test]
    fn letters_and_coordinates_name_the_same_elements() {
        let p = square();
        let a = parse_map(&p, "plan:w,x,z,y").unwrap();
        let b = parse_map(&p, "plan:1:1,2:1,2:2,1:2").unwrap();
        assert_eq!(a, b);
        assert_eq!(
            a,
            TogglePlan::Custom(vec![Element(0), Element(1), Element(3), Element(2)])
        );
    }

    #[test]
    fn letters_are_only_for_the_square() {
        let p = Poset::rect(2, 3).unwrap();
        assert!(parse_map(&p, "plan:w").is_err());
        assert!(parse_map(&p, "plan:2:3").is_ok());
        assert!(parse_map(&p, "plan:3:1").is_err());
        assert!(parse_map(&p, "spiral").is_err());
    }

    #[test]
    fn init_is_row_major_and_checked_against_the_setting() {
        let p = square();
        let f = parse_init(&p, Setting::Birational, "1,2,3,4").unwrap();
        assert_eq!(f.get(p.element_at(2, 1).unwrap()), &rational::int(2));
        assert!(parse_init(&p, Setting::Birational, "1,0,3,4").is_err());
        assert!(parse_init(&p, Setting::Birational, "1,2,3").is_err());
        assert!(parse_init(&p, Setting::Combinatorial, "1,2,3,4").is_err());
        assert!(parse_init(&p, Setting::PlUnit, "1/2,1/2,1/2,1/2").is_ok());
    }

    #[test]
    fn statistics_parse() {
        let p = square();
        assert_eq!(parse_stat(&p, "file:2").unwrap().name, "file(2)");
        assert_eq!(
            parse_stat(&p, "opposite:w").unwrap().coefficients,
            parse_stat(&p, "custom:1,0,0,1").unwrap().coefficients
        );
        assert!(parse_stat(&p, "file:4").is_err());
        assert!(parse_stat(&p, "custom:1,2").is_err());
    }
}
