//! Parallel against sequential runs of the enumeration-heavy solvers.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use effkit_core::domain::{enumerate_unit_solutions, Presentation};
use effkit_core::exec::{self, Mode};
use effkit_core::function_field::{solve_ff_sunit, PlaceSet};
use effkit_core::solvers::{solve_sunit_q, RationalSUnitProblem};
use effkit_core::ZPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

const MODES: [(&str, Mode); 2] = [("parallel", Mode::Parallel), ("sequential", Mode::Sequential)];

fn sunit_q(c: &mut Criterion) {
    let prob = RationalSUnitProblem {
        primes: [2, 3, 5].iter().map(|&p| BigInt::from(p)).collect(),
        a: BigRational::one(),
        b: BigRational::one(),
        c: BigRational::one(),
        cap: 6,
    };
    let mut g = c.benchmark_group("solve_sunit_q_2_3_5");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            exec::set_mode(mode);
            b.iter(|| solve_sunit_q(&prob).unwrap())
        });
    }
    g.finish();
}

fn ff_sunit(c: &mut Criterion) {
    let s = PlaceSet::parse("inf,z,z-1,z+1,z-2").unwrap();
    let mut g = c.benchmark_group("solve_ff_sunit_5_places");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            exec::set_mode(mode);
            b.iter(|| solve_ff_sunit(&s).unwrap())
        });
    }
    g.finish();
}

fn unit_enumeration(c: &mut Criterion) {
    let p = Presentation::parse(1, 0, &["X1^2 - X1 - 1"]).unwrap();
    let one = ZPoly::one(1);
    let mut g = c.benchmark_group("enumerate_unit_solutions_golden");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            exec::set_mode(mode);
            b.iter(|| enumerate_unit_solutions(&p, &one, &one, &one, 2))
        });
    }
    g.finish();
}

criterion_group!(benches, sunit_q, ff_sunit, unit_enumeration);
criterion_main!(benches);
