//! Derivative-free searches used for DPC parameter checks and power sweeps.

/// Location and value of an extremum found by a search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum<X> {
    pub argument: X,
    pub value: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `tol`. Non-finite values of `f`
/// are treated as `-inf`.
pub fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Extremum<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut eval = |x: f64| {
        let v = f(x);
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    };
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c);
    let mut fd = eval(d);
    // 200 iterations shrink any f64 bracket below one ulp
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d);
        }
    }
    let mid = 0.5 * (a + b);
    let fm = eval(mid);
    let mut best = Extremum {
        argument: mid,
        value: fm,
    };
    for (x, v) in [(c, fc), (d, fd)] {
        if v > best.value {
            best = Extremum {
                argument: x,
                value: v,
            };
        }
    }
    best
}

/// Nelder–Mead maximization in two dimensions.
///
/// `step` is the initial simplex edge along each axis. Terminates when the
/// spread of simplex values drops below `tol` or after `max_iter` steps.
pub fn nelder_mead_max<F>(
    mut f: F,
    start: [f64; 2],
    step: f64,
    tol: f64,
    max_iter: usize,
) -> Extremum<[f64; 2]>
where
    F: FnMut([f64; 2]) -> f64,
{
    let mut eval = |x: [f64; 2]| {
        let v = f(x);
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    };
    let mut simplex = [
        start,
        [start[0] + step, start[1]],
        [start[0], start[1] + step],
    ];
    let mut values = simplex.map(&mut eval);

    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];

    for _ in 0..max_iter {
        // order best .. worst (descending value)
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
        simplex = order.map(|i| simplex[i]);
        values = order.map(|i| values[i]);

        if (values[0] - values[2]).abs() <= tol && values[2].is_finite() {
            break;
        }
        let centroid = lerp(simplex[0], simplex[1], 0.5);
        let worst = simplex[2];

        let reflected = lerp(centroid, worst, -1.0);
        let fr = eval(reflected);
        if fr > values[0] {
            let expanded = lerp(centroid, worst, -2.0);
            let fe = eval(expanded);
            if fe > fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
        } else if fr > values[1] {
            simplex[2] = reflected;
            values[2] = fr;
        } else {
            let contracted = if fr > values[2] {
                lerp(centroid, reflected, 0.5)
            } else {
                lerp(centroid, worst, 0.5)
            };
            let fc = eval(contracted);
            if fc > values[2].max(fr) {
                simplex[2] = contracted;
                values[2] = fc;
            } else {
                for i in 1..3 {
                    simplex[i] = lerp(simplex[0], simplex[i], 0.5);
                    values[i] = eval(simplex[i]);
                }
            }
        }
    }
    let best = (0..3)
        .max_by(|&i, &j| values[i].total_cmp(&values[j]))
        .unwrap_or(0);
    Extremum {
        argument: simplex[best],
        value: values[best],
    }
}
