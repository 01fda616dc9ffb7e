use darboux::{Sym3, Vec3};

#[test]
fn cross_norm_identity() {
    let a = Vec3::new(0.3, -1.2, 2.5);
    let b = Vec3::new(-0.7, 0.4, 1.1);
    let lhs = a.cross(b).norm_squared();
    let rhs = a.norm_squared() * b.norm_squared() - a.dot(b).powi(2);
    assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
}

#[test]
fn eigen_of_diagonal() {
    let e = Sym3::diagonal(3.0, 1.0, 2.0).eigen();
    assert_eq!(e.values, [1.0, 2.0, 3.0]);
    assert!((e.vectors[0].dot(Vec3::Y).abs() - 1.0).abs() < 1e-15);
}

#[test]
fn eigen_reconstructs_matrix() {
    let m = Sym3 {
        xx: 2.0,
        xy: -0.5,
        xz: 0.25,
        yy: 1.0,
        yz: 0.75,
        zz: -3.0,
    };
    let e = m.eigen();
    for k in 0..3 {
        let lhs = m.mul_vec(e.vectors[k]);
        let rhs = e.vectors[k] * e.values[k];
        assert!((lhs - rhs).norm() < 1e-13);
        assert!((e.vectors[k].norm() - 1.0).abs() < 1e-14);
    }
    assert!(e.vectors[0].dot(e.vectors[1]).abs() < 1e-14);
}
