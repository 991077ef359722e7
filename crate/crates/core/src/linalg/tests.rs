use proptest::prelude::*;

use super::*;

fn f2() -> &'static BaseField {
    BaseField::get(2).unwrap()
}

fn m2(rows: usize, cols: usize, data: &[u8]) -> GfMatrix {
    GfMatrix::from_vec(f2(), rows, cols, data.to_vec())
}

#[test]
fn rref_examples() {
    let i3 = GfMatrix::identity(f2(), 3);
    let r = i3.rref();
    assert_eq!(r.matrix, i3);
    assert_eq!(r.pivots, vec![0, 1, 2]);
    assert_eq!(r.rank(), 3);

    let z = GfMatrix::zeros(f2(), 2, 2);
    let r = z.rref();
    assert_eq!(r.matrix, z);
    assert!(r.pivots.is_empty());

    let r = m2(2, 2, &[1, 1, 1, 1]).rref();
    assert_eq!(r.matrix, m2(2, 2, &[1, 1, 0, 0]));
    assert_eq!(r.pivots, vec![0]);
}

#[test]
fn null_space_examples() {
    assert_eq!(GfMatrix::identity(f2(), 4).null_space().rows(), 0);
    let ns = GfMatrix::zeros(f2(), 2, 5).null_space();
    assert_eq!(ns.rows(), 5);
    assert_eq!(ns.rank(), 5);
    let ns = m2(2, 3, &[1, 1, 0, 0, 1, 1]).null_space();
    assert_eq!(ns, m2(1, 3, &[1, 1, 1]));
}

#[test]
fn kron_examples() {
    let i2 = GfMatrix::identity(f2(), 2);
    assert_eq!(i2.kron(&i2), GfMatrix::identity(f2(), 4));
    let b = m2(2, 3, &[1, 0, 1, 1, 1, 0]);
    assert_eq!(m2(1, 1, &[1]).kron(&b), b);
    let a = m2(1, 2, &[1, 1]);
    assert_eq!(a.kron(&b), b.hstack(&b).unwrap());
}

#[test]
fn vec_is_column_major() {
    let f = BaseField::get(5).unwrap();
    let m = GfMatrix::from_vec(f, 2, 2, vec![1, 2, 3, 4]);
    assert_eq!(m.vec().data(), &[1, 3, 2, 4]);
    let one = GfMatrix::from_vec(f, 1, 1, vec![3]);
    assert_eq!(one.vec(), one);
}

#[test]
fn invert_examples() {
    let i3 = GfMatrix::identity(f2(), 3);
    assert_eq!(i3.invert().unwrap(), i3);
    assert_eq!(
        m2(2, 2, &[0, 1, 1, 1]).invert().unwrap(),
        m2(2, 2, &[1, 1, 1, 0])
    );
    assert_eq!(m2(2, 2, &[1, 1, 1, 1]).invert().unwrap_err(), Error::Singular);
    assert!(matches!(
        m2(1, 2, &[1, 1]).invert(),
        Err(Error::DimensionMismatch(_))
    ));
}

#[test]
fn intersection_examples() {
    let i2 = GfMatrix::identity(f2(), 2);
    assert_eq!(i2.row_space_intersection(&i2).unwrap().rank(), 2);
    let a = m2(1, 2, &[1, 0]);
    let b = m2(1, 2, &[0, 1]);
    assert_eq!(a.row_space_intersection(&b).unwrap().rows(), 0);
    let b = m2(1, 2, &[1, 1]);
    assert_eq!(i2.row_space_intersection(&b).unwrap(), b);
    assert!(matches!(
        i2.row_space_intersection(&m2(1, 3, &[1, 0, 0])),
        Err(Error::DimensionMismatch(_))
    ));
}

#[test]
fn mixed_fields_are_rejected() {
    let a = GfMatrix::identity(f2(), 2);
    let b = GfMatrix::identity(BaseField::get(3).unwrap(), 2);
    assert_eq!(a.checked_mul(&b).unwrap_err(), Error::FieldMismatch);
    assert_eq!(a.checked_add(&b).unwrap_err(), Error::FieldMismatch);
    assert_eq!(a.row_space_intersection(&b).unwrap_err(), Error::FieldMismatch);
}

#[test]
fn solve_right_and_left() {
    let f = BaseField::get(3).unwrap();
    let a = GfMatrix::from_vec(f, 2, 3, vec![1, 2, 0, 0, 1, 1]);
    let x = GfMatrix::from_vec(f, 3, 1, vec![2, 1, 1]);
    let b = &a * &x;
    let sol = a.solve_right(&b).unwrap().unwrap();
    assert_eq!(&a * &sol, b);
    let y = GfMatrix::from_vec(f, 1, 2, vec![1, 2]);
    let c = &y * &a;
    assert_eq!(a.solve_left(&c).unwrap().unwrap(), y);
    let bad = GfMatrix::from_vec(f, 1, 3, vec![0, 0, 1]);
    assert!(a.solve_left(&bad).unwrap().is_none());
}

fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = GfMatrix> {
    (prop::sample::select(vec![2usize, 3, 4, 5, 8, 9]), 0..=max_rows, 1..=max_cols)
        .prop_flat_map(|(q, r, c)| {
            prop::collection::vec(0..q as u8, r * c).prop_map(move |data| {
                GfMatrix::from_vec(BaseField::get(q).unwrap(), r, c, data)
            })
        })
}

fn arb_pair_same_field(
    shape: fn(usize, usize) -> ((usize, usize), (usize, usize)),
) -> impl Strategy<Value = (GfMatrix, GfMatrix)> {
    (prop::sample::select(vec![2usize, 3, 4, 7]), 1..6usize, 1..6usize).prop_flat_map(
        move |(q, a, b)| {
            let ((r1, c1), (r2, c2)) = shape(a, b);
            (
                prop::collection::vec(0..q as u8, r1 * c1),
                prop::collection::vec(0..q as u8, r2 * c2),
            )
                .prop_map(move |(d1, d2)| {
                    let f = BaseField::get(q).unwrap();
                    (
                        GfMatrix::from_vec(f, r1, c1, d1),
                        GfMatrix::from_vec(f, r2, c2, d2),
                    )
                })
        },
    )
}

proptest! {
    #[test]
    fn rank_nullity(m in arb_matrix(12, 12)) {
        let ns = m.null_space();
        prop_assert_eq!(m.rank() + ns.rows(), m.cols());
        prop_assert!((&m * &ns.transpose()).is_zero());
        prop_assert_eq!(ns.rank(), ns.rows());
    }

    #[test]
    fn packed_and_generic_kernels_agree(m in arb_matrix(40, 150)) {
        prop_assert_eq!(m.rref_with(Kernel::Auto), m.rref_with(Kernel::Generic));
        prop_assert_eq!(m.rank(), m.rref_with(Kernel::Generic).rank());
    }

    #[test]
    fn unvec_inverts_vec(m in arb_matrix(6, 6)) {
        let v = m.vec();
        prop_assert_eq!(GfMatrix::unvec(m.field(), v.data(), m.rows(), m.cols()), m);
    }

    #[test]
    fn vec_kron_identity(
        (x, y, z) in (prop::sample::select(vec![2usize, 3, 4]), 1..4usize, 1..4usize, 1..4usize, 1..4usize)
            .prop_flat_map(|(q, a, b, c, d)| (
                prop::collection::vec(0..q as u8, a * b),
                prop::collection::vec(0..q as u8, b * c),
                prop::collection::vec(0..q as u8, c * d),
            ).prop_map(move |(dx, dy, dz)| {
                let f = BaseField::get(q).unwrap();
                (GfMatrix::from_vec(f, a, b, dx), GfMatrix::from_vec(f, b, c, dy), GfMatrix::from_vec(f, c, d, dz))
            }))
    ) {
        let lhs = (&(&x * &y) * &z).vec();
        let rhs = &z.transpose().kron(&x) * &y.vec();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kron_mixed_product(
        (a, b, c, d) in (prop::sample::select(vec![2usize, 3, 4, 7]), 1..4usize, 1..4usize, 1..4usize, 1..4usize)
            .prop_flat_map(|(q, r, s, t, u)| (
                prop::collection::vec(0..q as u8, r * s),
                prop::collection::vec(0..q as u8, t * u),
                prop::collection::vec(0..q as u8, s * r),
                prop::collection::vec(0..q as u8, u * 2),
            ).prop_map(move |(da, db, dc, dd)| {
                let f = BaseField::get(q).unwrap();
                (
                    GfMatrix::from_vec(f, r, s, da),
                    GfMatrix::from_vec(f, t, u, db),
                    GfMatrix::from_vec(f, s, r, dc),
                    GfMatrix::from_vec(f, u, 2, dd),
                )
            }))
    ) {
        let lhs = &a.kron(&b) * &c.kron(&d);
        let rhs = (&a * &c).kron(&(&b * &d));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kron_is_bilinear((a, b, c) in arb_pair_same_field(|a, b| ((a, b), (a, b))).prop_flat_map(|(a, b)| {
        let f = a.field();
        prop::collection::vec(0..f.order() as u8, 6)
            .prop_map(move |d| (a.clone(), b.clone(), GfMatrix::from_vec(f, 2, 3, d)))
    })) {
        prop_assert_eq!((&a + &b).kron(&c), &a.kron(&c) + &b.kron(&c));
        prop_assert_eq!(c.kron(&(&a + &b)), &c.kron(&a) + &c.kron(&b));
    }

    #[test]
    fn intersection_dimension((a, b) in arb_pair_same_field(|a, b| ((a, 6), (b, 6)))) {
        let meet = a.row_space_intersection(&b).unwrap();
        let expected = a.rank() + b.rank() - a.vstack(&b).unwrap().rank();
        prop_assert_eq!(meet.rank(), expected);
        prop_assert_eq!(meet.rows(), expected);
        prop_assert!(a.row_space_contains(&meet));
        prop_assert!(b.row_space_contains(&meet));
    }

    #[test]
    fn invert_roundtrip(m in (prop::sample::select(vec![2usize, 3, 4, 5]), 1..7usize).prop_flat_map(|(q, n)| {
        prop::collection::vec(0..q as u8, n * n)
            .prop_map(move |d| GfMatrix::from_vec(BaseField::get(q).unwrap(), n, n, d))
    })) {
        match m.invert() {
            Ok(inv) => prop_assert_eq!(&m * &inv, GfMatrix::identity(m.field(), m.rows())),
            Err(e) => {
                prop_assert_eq!(e, Error::Singular);
                prop_assert!(m.rank() < m.rows());
                prop_assert_eq!(m.determinant(), 0);
            }
        }
    }
}
