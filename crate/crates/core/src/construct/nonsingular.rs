use rayon::prelude::*;

use super::{expected, Expected, Provenance, VertexSet};
use crate::error::{Error, Result};
use crate::geometry::{Point, QuadraticForm};
use crate::gf::SquareClass;
use crate::srg::{Family, Graph, GraphSpec};

/// Square class shared by the `Q`-values of the vertices, when there is one.
pub fn vertex_class(spec: &GraphSpec) -> Option<SquareClass> {
    match spec.family {
        Family::NoPerp | Family::NoOdd => Some(if spec.eps == Some(1) {
            SquareClass::Square
        } else {
            SquareClass::Nonsquare
        }),
        // over GF(3) the value 1 is a square and 2 is not
        Family::NoEven3 => Some(if spec.part == 1 {
            SquareClass::Square
        } else {
            SquareClass::Nonsquare
        }),
        _ => None,
    }
}

fn form_of(g: &Graph) -> Result<&QuadraticForm> {
    g.space()
        .quadratic()
        .ok_or_else(|| Error::WrongFamily(format!("{} has no quadratic form", g.spec())))
}

/// Every projective point `y` of the ambient space with `Q(y)` in `class`.
pub fn nonsingular_points_in_class(g: &Graph, class: SquareClass) -> Result<Vec<Point>> {
    let form = form_of(g)?;
    let f = form.field();
    Ok(form
        .points()
        .into_iter()
        .filter(|p| f.square_class(form.value(&p.0)).ok() == Some(class))
        .collect())
}

/// `M ∩ X` with `M = {<x> : B(x,y)^2 - Q(x)Q(y) is a nonzero square}`, for a
/// nonsingular `y` whose `Q`-value lies in the class opposite the vertices'.
pub fn construction_iii(g: &Graph, y: &Point) -> Result<VertexSet> {
    let spec = *g.spec();
    let supported = match spec.family {
        Family::NoPerp => true,
        Family::NoEven3 => spec.eps == Some(1),
        _ => false,
    };
    if !supported {
        return Err(Error::WrongFamily(format!(
            "the nonsingular-point construction needs no-perp or no-even3 eps=+1, got {spec}"
        )));
    }
    let form = form_of(g)?;
    let f = form.field();
    if y.0.len() != form.dim() {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            found: y.0.len(),
        });
    }
    let qy = form.eval(&y.0)?;
    let class = f.square_class(qy)?;
    let want = vertex_class(&spec)
        .expect("orthogonality families have a vertex class")
        .opposite();
    if class != want {
        return Err(Error::WrongSquareClass(format!(
            "Q(y) is {class:?}, the construction needs {want:?}"
        )));
    }
    let image = form.polar_image(&y.0);
    let indices: Vec<usize> = g
        .vertices()
        .par_iter()
        .enumerate()
        .filter(|(_, x)| {
            let b = crate::geometry::dot(f, &image, &x.0);
            let d = f.sub(f.mul(b, b), f.mul(form.value(&x.0), qy));
            f.square_class(d).ok() == Some(SquareClass::Square)
        })
        .map(|(i, _)| i)
        .collect();
    let provenance = Provenance::ConstructionIii {
        y: y.to_string(),
    };
    let value = expected::nonsingular_point(&spec)?;
    Ok(VertexSet::new(spec, g.v(), indices, provenance)?
        .with_expected(Some(Expected::single(value))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::srg::build_graph;

    #[test]
    fn class_rules() {
        let g = build_graph(&GraphSpec::new(Family::NoPerp, 3, 2, Some(1)).unwrap()).unwrap();
        let squares = nonsingular_points_in_class(&g, SquareClass::Square).unwrap();
        assert_eq!(squares.len(), g.v());
        assert!(matches!(
            construction_iii(&g, &squares[0]),
            Err(Error::WrongSquareClass(_))
        ));
        let nonsq = nonsingular_points_in_class(&g, SquareClass::Nonsquare).unwrap();
        let y = construction_iii(&g, &nonsq[0]).unwrap();
        assert!(!y.is_trivial());
        let g = build_graph(&GraphSpec::new(Family::NoOdd, 3, 2, Some(1)).unwrap()).unwrap();
        assert!(matches!(
            construction_iii(&g, &nonsq[0]),
            Err(Error::WrongFamily(_))
        ));
    }
}
