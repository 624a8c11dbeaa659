#![allow(dead_code)]

use jacobi_core::algebroid::{JacobiAlgebroid, LieAlgebroid};
use jacobi_core::contact::build_tangent;
use jacobi_core::gallery;
use jacobi_core::structure::{Object, StructureFile};
use jacobi_core::symalg::parse::{parse_kvector, parse_poly};
use jacobi_core::symalg::{EndoTensor, KVector, Naming, Poly, Variance};

pub const MV: Variance = Variance::Multivector;
pub const FORM: Variance = Variance::Form;

pub fn vec1(n: &Naming, src: &str) -> KVector {
    parse_kvector(src, n, 1, MV).unwrap()
}

pub fn biv(n: &Naming, src: &str) -> KVector {
    parse_kvector(src, n, 2, MV).unwrap()
}

pub fn form(n: &Naming, deg: usize, src: &str) -> KVector {
    parse_kvector(src, n, deg, FORM).unwrap()
}

pub fn fun(n: &Naming, src: &str, v: Variance) -> KVector {
    parse_kvector(src, n, 0, v).unwrap()
}

pub fn poly(n: &Naming, src: &str) -> Poly {
    parse_poly(src, &n.coords).unwrap()
}

/// `TM` over the given coordinates with cocycle given as a 1-form source.
pub fn tangent(coords: &[&str], phi0: &str) -> JacobiAlgebroid {
    let tm = LieAlgebroid::tangent(coords);
    let p = form(tm.naming(), 1, phi0);
    let comps = (0..coords.len()).map(|i| p.coeff(&[i])).collect::<Vec<_>>();
    build_tangent(coords, &comps).unwrap()
}

pub fn endo(nvars: usize, rows: &[&[i64]]) -> EndoTensor {
    EndoTensor::from_ints(nvars, rows)
}

/// `J0` on `R²`.
pub fn j0() -> EndoTensor {
    endo(2, &[&[0, -1], &[1, 0]])
}

/// Block-diagonal complex structure on `R⁴` with coordinates `x1,y1,x2,y2`.
pub fn j4() -> EndoTensor {
    endo(4, &[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]])
}

pub fn fixture(name: &str) -> StructureFile {
    gallery::load(name).expect("known fixture").expect("fixture parses")
}

pub fn obj(f: &StructureFile, name: &str) -> KVector {
    match f.objects.get(name) {
        Some(Object::Element(k)) => k.clone(),
        other => panic!("object {name}: {other:?}"),
    }
}

pub fn obj_endo(f: &StructureFile, name: &str) -> EndoTensor {
    match f.objects.get(name) {
        Some(Object::Endo(n)) => n.clone(),
        other => panic!("object {name}: {other:?}"),
    }
}
