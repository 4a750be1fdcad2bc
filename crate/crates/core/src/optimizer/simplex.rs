//! Nelder–Mead simplex descent with dimension-adaptive coefficients.

/// Outcome of a [`nelder_mead`] run.
#[derive(Clone, Debug)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: u64,
}

struct Simplex {
    points: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl Simplex {
    fn around<F: FnMut(&[f64]) -> f64>(f: &mut F, x0: &[f64], f0: f64, step: f64, evals: &mut u64) -> Self {
        let mut points = vec![x0.to_vec()];
        let mut values = vec![f0];
        for i in 0..x0.len() {
            let mut p = x0.to_vec();
            p[i] += if p[i].abs() > 1e-3 { step * p[i].signum() } else { step };
            values.push(f(&p));
            points.push(p);
            *evals += 1;
        }
        Self { points, values }
    }

    fn sort(&mut self) {
        let mut order: Vec<usize> = (0..self.points.len()).collect();
        order.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]));
        self.points = order.iter().map(|&i| self.points[i].clone()).collect();
        self.values = order.iter().map(|&i| self.values[i]).collect();
    }

    fn diameter(&self) -> f64 {
        let best = &self.points[0];
        self.points[1..]
            .iter()
            .map(|p| p.iter().zip(best).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    }
}

const STALL_FLOOR: f64 = 1e-3;

fn lerp(from: &[f64], to: &[f64], t: f64) -> Vec<f64> {
    from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
}

/// Minimizes `f` from `x0` with initial simplex edge `step`.
///
/// A run stalls when the spread of simplex values falls below
/// `tol · max(|f_best|, 1e-3)`, so minima near zero are resolved well below
/// `tol`. The simplex is then rebuilt around the best vertex with a smaller
/// edge and the search continues until a rebuild no longer improves the best
/// value by more than that threshold, or `max_iters` iterations are spent.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    step: f64,
    max_iters: usize,
    tol: f64,
) -> SimplexResult {
    let n = x0.len();
    let nf = n as f64;
    let (reflect, expand, contract, shrink) = (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf);
    let mut evals = 1;
    let f0 = f(x0);
    let mut simplex = Simplex::around(&mut f, x0, f0, step, &mut evals);
    let mut edge = step;
    let mut iters = 0;
    let mut last_restart_best = f64::INFINITY;

    loop {
        simplex.sort();
        let best = simplex.values[0];
        let stall = tol * best.abs().max(STALL_FLOOR);
        let spread = simplex.values[n] - best;
        let collapsed = simplex.diameter() < 1e-14;
        if spread <= stall || collapsed || iters >= max_iters {
            let improved = last_restart_best - best > stall;
            if iters >= max_iters || !improved {
                break;
            }
            last_restart_best = best;
            edge = (edge * 0.1).max(1e-7);
            let x = simplex.points[0].clone();
            simplex = Simplex::around(&mut f, &x, best, edge, &mut evals);
            continue;
        }
        iters += 1;

        let centroid: Vec<f64> = (0..n).map(|j| simplex.points[..n].iter().map(|p| p[j]).sum::<f64>() / nf).collect();
        let worst = simplex.points[n].clone();
        let xr = lerp(&centroid, &worst, -reflect);
        let fr = f(&xr);
        evals += 1;
        if fr < simplex.values[0] {
            let xe = lerp(&centroid, &worst, -expand);
            let fe = f(&xe);
            evals += 1;
            if fe < fr {
                simplex.points[n] = xe;
                simplex.values[n] = fe;
            } else {
                simplex.points[n] = xr;
                simplex.values[n] = fr;
            }
            continue;
        }
        if fr < simplex.values[n - 1] {
            simplex.points[n] = xr;
            simplex.values[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < simplex.values[n] {
            let xc = lerp(&centroid, &worst, -reflect * contract);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = lerp(&centroid, &worst, contract);
            let fc = f(&xc);
            (xc, fc)
        };
        evals += 1;
        if fc < fr.min(simplex.values[n]) {
            simplex.points[n] = xc;
            simplex.values[n] = fc;
            continue;
        }
        let best = simplex.points[0].clone();
        for i in 1..=n {
            simplex.points[i] = lerp(&best, &simplex.points[i], shrink);
            simplex.values[i] = f(&simplex.points[i]);
            evals += 1;
        }
    }
    simplex.sort();
    SimplexResult { x: simplex.points.swap_remove(0), value: simplex.values[0], evals }
}
