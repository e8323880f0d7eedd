use num_integer::Integer;

use super::concrete::{build, PointData, PointMor, SquareRule};
use crate::double::SquaresCat;

fn endpoint(k: usize, q: usize) -> String {
    let g = k.gcd(&q);
    if q / g == 1 {
        (k / g).to_string()
    } else {
        format!("{}/{}", k / g, q / g)
    }
}

fn cells_name(cells: &[usize], q: usize) -> String {
    if cells.is_empty() {
        return "∅".into();
    }
    let mut parts = Vec::new();
    let mut start = cells[0];
    let mut prev = cells[0];
    for &c in &cells[1..] {
        if c != prev + 1 {
            parts.push(format!("[{},{}]", endpoint(start, q), endpoint(prev + 1, q)));
            start = c;
        }
        prev = c;
    }
    parts.push(format!("[{},{}]", endpoint(start, q), endpoint(prev + 1, q)));
    parts.join("u")
}

/// Finite unions of closed intervals with endpoints in `(1/q)ℤ ∩ [0, L]`,
/// compared cell by cell, with inclusions along translations.
pub fn interval_polytopes(q: usize, length: usize) -> SquaresCat {
    interval_polytopes_with(q, length, false)
}

/// As [`interval_polytopes`], optionally also allowing reflections.
pub fn interval_polytopes_with(q: usize, length: usize, reflections: bool) -> SquaresCat {
    let q = q.max(1);
    let n = q * length;
    let mut objs: Vec<Vec<usize>> = (0u64..(1 << n))
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect();
    objs.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let names: Vec<String> = objs.iter().map(|c| cells_name(c, q)).collect();
    let mut mors = Vec::new();
    let mut h_names = Vec::new();
    let mut v_names = Vec::new();
    let ni = n as i64;
    for (i, p) in objs.iter().enumerate() {
        for (j, qq) in objs.iter().enumerate() {
            let mut push = |map: Vec<usize>, sign: i8, tag: String| {
                h_names.push(format!("{}>{}{tag}", names[i], names[j]));
                v_names.push(format!("{}>>{}{tag}", names[j], names[i]));
                mors.push(PointMor { src: i, dst: j, map, sign });
            };
            if p.is_empty() {
                push(Vec::new(), 1, String::new());
                continue;
            }
            let image = |cell: i64| -> Option<usize> {
                (0..ni).contains(&cell).then_some(())?;
                qq.iter().position(|&c| c as i64 == cell)
            };
            for t in -(ni - 1)..ni {
                let map: Option<Vec<usize>> = p.iter().map(|&c| image(c as i64 + t)).collect();
                if let Some(map) = map {
                    push(map, 1, format!("+{}", t));
                }
            }
            if reflections {
                for c in 0..(2 * ni - 1) {
                    let map: Option<Vec<usize>> = p.iter().map(|&x| image(c - x as i64)).collect();
                    if let Some(map) = map {
                        push(map, -1, format!("~{c}"));
                    }
                }
            }
        }
    }
    let data = PointData {
        sizes: objs.iter().map(Vec::len).collect(),
        objects: names,
        mors,
        h_names,
        v_names,
    };
    build(data, SquareRule::Pushout, 0).sq
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::{validate_squares_category, weak_equivalences};

    #[test]
    fn degenerate_range_is_point() {
        let d = interval_polytopes(1, 0);
        assert_eq!(d.n_objects(), 1);
        assert!(validate_squares_category(&d).passed());
    }

    #[test]
    fn unit_cells_up_to_two() {
        let d = interval_polytopes(1, 2);
        assert_eq!(d.n_objects(), 4);
        assert!(d.h().find_object("[0,2]").is_some());
        let r = validate_squares_category(&d);
        assert!(r.passed(), "{r}");
        let w = weak_equivalences(&d);
        let o01 = d.h().find_object("[0,1]").unwrap();
        let o12 = d.h().find_object("[1,2]").unwrap();
        assert!(w.vweq.keys().any(|&u| d.v().src(u) == o12 && d.v().dst(u) == o01));
    }

    #[test]
    fn reflections_validate() {
        let d = interval_polytopes_with(2, 1, true);
        let r = validate_squares_category(&d);
        assert!(r.passed(), "{r}");
    }
}
