//! Hurwitz zeta ζ(s, q) = Σ_{k≥0} (q + k)^(−s) for s > 1, q > 0.

/// (2j)! / B_2j for j = 1..12.
const EM_DENOMS: [f64; 12] = [
    12.0,
    -720.0,
    30240.0,
    -1209600.0,
    47900160.0,
    -1.8924375803183791606e9,
    7.47242496e10,
    -2.950130727918164224e12,
    1.1646782814350067249e14,
    -4.5979787224074726105e15,
    1.8152105401943546773e17,
    -7.1661652561756670113e18,
];

/// Euler–Maclaurin summation: at least ten explicit terms, then the integral
/// tail and up to twelve Bernoulli corrections.
pub fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    if s <= 1.0 || q <= 0.0 || s.is_nan() || q.is_nan() {
        return f64::INFINITY;
    }
    let mut a = q;
    let mut sum = a.powf(-s);
    let mut b = 0.0;
    let mut i = 0;
    while i < 9 || a <= 9.0 {
        i += 1;
        a += 1.0;
        b = a.powf(-s);
        sum += b;
        if (b / sum).abs() < f64::EPSILON {
            return sum;
        }
    }
    let w = a;
    sum += b * w / (s - 1.0);
    sum -= 0.5 * b;
    let mut fac = 1.0;
    let mut k = 0.0;
    for denom in EM_DENOMS {
        fac *= s + k;
        b /= w;
        let t = fac * b / denom;
        sum += t;
        if (t / sum).abs() < f64::EPSILON {
            break;
        }
        k += 1.0;
        fac *= s + k;
        b /= w;
        k += 1.0;
    }
    sum
}
