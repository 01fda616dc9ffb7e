use darboux::output::format_g17;

#[test]
fn g17_matches_printf() {
    let cases = [
        (0.1, "0.10000000000000001"),
        (1e-5, "1.0000000000000001e-05"),
        (1e16, "10000000000000000"),
        (1e17, "1e+17"),
        (-0.0, "-0"),
        (0.0, "0"),
        (std::f64::consts::PI, "3.1415926535897931"),
        (5e-324, "4.9406564584124654e-324"),
        (0.0001, "0.0001"),
        (1.5, "1.5"),
        (-2.0, "-2"),
        (123456789.125, "123456789.125"),
        (1e300, "1.0000000000000001e+300"),
        (f64::NAN, "nan"),
        (f64::NEG_INFINITY, "-inf"),
    ];
    for (x, want) in cases {
        assert_eq!(format_g17(x), want, "{x:e}");
    }
}

#[test]
fn g17_round_trips() {
    let mut x = 1.2345e-7;
    for _ in 0..200 {
        assert_eq!(format_g17(x).parse::<f64>().unwrap(), x);
        x *= -3.7;
    }
}
