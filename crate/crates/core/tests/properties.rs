//! Property tests for the algebraic laws the tensor operations promise.

use proptest::prelude::*;

use tensorfractal_core::fractal::{catalog, FractalKind, FractalSpec};
use tensorfractal_core::tt::{TtCore, TtTensor};
use tensorfractal_core::{DenseTensor, MultiIndex, Shape};

fn tensor_of(dims: Vec<usize>, max_val: u64) -> BoxedStrategy<DenseTensor> {
    let len: usize = dims.iter().product();
    prop::collection::vec(0..=max_val, len)
        .prop_map(move |data| DenseTensor::new(Shape::new(dims.clone()).unwrap(), data).unwrap())
        .boxed()
}

fn tensor(order: usize, max_dim: usize, max_val: u64) -> BoxedStrategy<DenseTensor> {
    prop::collection::vec(1..=max_dim, order)
        .prop_flat_map(move |dims| tensor_of(dims, max_val))
        .boxed()
}

/// Two tensors of one random order, dims <= 3 each, so that any product
/// stays at or below 3^6 output entries.
fn same_order_pair(max_val: u64) -> BoxedStrategy<(DenseTensor, DenseTensor)> {
    (1..=3usize)
        .prop_flat_map(move |order| (tensor(order, 3, max_val), tensor(order, 3, max_val)))
        .boxed()
}

fn lin_comb(a: u64, t: &DenseTensor, b: u64, u: &DenseTensor) -> DenseTensor {
    let data = t
        .data()
        .iter()
        .zip(u.data())
        .map(|(&x, &y)| a * x + b * y)
        .collect();
    DenseTensor::new(t.shape().clone(), data).unwrap()
}

proptest! {
    /// Defining index law of the generalized Kronecker product: the entry
    /// at (n_k * x_k + y_k) is T[x] * U[y], checked on every index pair.
    #[test]
    fn kronecker_index_law((t, u) in same_order_pair(2)) {
        let k = t.kronecker_product(&u).unwrap();
        let u_dims = u.shape().dims().to_vec();
        for t_flat in 0..t.shape().element_count() {
            let x = t.shape().coords_of(t_flat);
            for u_flat in 0..u.shape().element_count() {
                let y = u.shape().coords_of(u_flat);
                let combined: Vec<u64> = x
                    .iter()
                    .zip(y.iter())
                    .zip(u_dims.iter())
                    .map(|((&xc, &yc), &n)| n as u64 * xc + yc)
                    .collect();
                prop_assert_eq!(
                    k.get(&combined).unwrap(),
                    t.get(&x).unwrap() * u.get(&y).unwrap()
                );
            }
        }
    }

    /// The tensor product is linear in each argument over integer scalars.
    #[test]
    fn tensor_product_is_bilinear(
        pair in prop::collection::vec(1..=3usize, 1..=2).prop_flat_map(|dims| {
            let len: usize = dims.iter().product();
            (
                Just(dims),
                prop::collection::vec(0..=4u64, len),
                prop::collection::vec(0..=4u64, len),
            )
        }),
        u in tensor(2, 3, 4),
        (a, b) in (0..=3u64, 0..=3u64),
    ) {
        let (dims, data1, data2) = pair;
        let shape = Shape::new(dims).unwrap();
        let t1 = DenseTensor::new(shape.clone(), data1).unwrap();
        let t2 = DenseTensor::new(shape, data2).unwrap();

        let left = lin_comb(a, &t1, b, &t2).tensor_product(&u).unwrap();
        let right = lin_comb(
            a,
            &t1.tensor_product(&u).unwrap(),
            b,
            &t2.tensor_product(&u).unwrap(),
        );
        prop_assert_eq!(&left, &right);

        // Same in the second argument.
        let left = u.tensor_product(&lin_comb(a, &t1, b, &t2)).unwrap();
        let right = lin_comb(
            a,
            &u.tensor_product(&t1).unwrap(),
            b,
            &u.tensor_product(&t2).unwrap(),
        );
        prop_assert_eq!(&left, &right);
    }

    /// Ones multiply under the Kronecker product of binary tensors.
    #[test]
    fn nonzero_counts_multiply((t, u) in same_order_pair(1)) {
        let k = t.kronecker_product(&u).unwrap();
        prop_assert_eq!(
            k.count_nonzeros().unwrap(),
            t.count_nonzeros().unwrap() * u.count_nonzeros().unwrap()
        );
    }

    /// Kronecker powers add exponents.
    #[test]
    fn kronecker_power_adds_exponents(
        t in tensor(2, 3, 1),
        (a, b) in (0..=2u32, 0..=2u32),
    ) {
        let joined = t.kronecker_power(a + b).unwrap();
        let split = t
            .kronecker_power(a)
            .unwrap()
            .kronecker_product(&t.kronecker_power(b).unwrap())
            .unwrap();
        prop_assert_eq!(joined, split);
    }

    /// Row-major flattening is a bijection.
    #[test]
    fn flat_layout_round_trips(dims in prop::collection::vec(1..=4usize, 1..=4)) {
        let shape = Shape::new(dims).unwrap();
        for flat in 0..shape.element_count() {
            prop_assert_eq!(shape.flat_index(&shape.coords_of(flat)).unwrap(), flat);
        }
    }

    /// 1-based index conversion is the stated shift.
    #[test]
    fn one_based_round_trips(coords in prop::collection::vec(1..=100u64, 1..=5)) {
        let idx = MultiIndex::from_one_based(&coords).unwrap();
        prop_assert_eq!(idx.to_one_based(), coords);
    }

    /// Slicing agrees with direct entry lookup on every remaining index.
    #[test]
    fn slice_agrees_with_entry(t in tensor(3, 3, 3), axis in 0..3usize, raw in any::<u64>()) {
        let extent = t.shape().dims()[axis] as u64;
        let coord = raw % extent;
        let sliced = t.slice(&[(axis, coord)]).unwrap();
        for flat in 0..sliced.shape().element_count() {
            let free = sliced.shape().coords_of(flat);
            let mut full = Vec::with_capacity(3);
            let mut it = free.iter();
            for a in 0..3 {
                full.push(if a == axis { coord } else { *it.next().unwrap() });
            }
            prop_assert_eq!(sliced.get(&free).unwrap(), t.get(&full).unwrap());
        }
    }
}

/// Literal multi-sum over all rank tuples, the written-out definition of a
/// TT contraction entry.
fn tt_entry_by_definition(tt: &TtTensor, coords: &[u64]) -> u64 {
    let ranks: Vec<usize> = std::iter::once(1)
        .chain(tt.cores().iter().map(|c| c.right_rank()))
        .collect();
    let tuple_count: usize = ranks.iter().product();
    let mut total = 0;
    for tuple in 0..tuple_count {
        let mut ks = Vec::with_capacity(ranks.len());
        let mut rest = tuple;
        for &r in &ranks {
            ks.push(rest % r);
            rest /= r;
        }
        let mut product = 1u64;
        for (i, core) in tt.cores().iter().enumerate() {
            product *= core.get(ks[i], coords[i] as usize, ks[i + 1]).unwrap();
        }
        total += product;
    }
    total
}

fn tt_strategy() -> BoxedStrategy<TtTensor> {
    (2..=3usize)
        .prop_flat_map(|order| {
            (
                prop::collection::vec(1..=2usize, order - 1),
                prop::collection::vec(1..=3usize, order),
            )
                .prop_flat_map(move |(ranks, modes)| {
                    let mut lens = Vec::with_capacity(order);
                    for i in 0..order {
                        let l = if i == 0 { 1 } else { ranks[i - 1] };
                        let r = if i == order - 1 { 1 } else { ranks[i] };
                        lens.push((l, modes[i], r));
                    }
                    let total: usize = lens.iter().map(|&(l, n, r)| l * n * r).sum();
                    prop::collection::vec(0..=2u64, total).prop_map(move |data| {
                        let mut cores = Vec::with_capacity(order);
                        let mut offset = 0;
                        for &(l, n, r) in &lens {
                            let len = l * n * r;
                            cores.push(
                                TtCore::new(l, n, r, data[offset..offset + len].to_vec()).unwrap(),
                            );
                            offset += len;
                        }
                        TtTensor::new(cores).unwrap()
                    })
                })
        })
        .boxed()
}

proptest! {
    /// Contraction equals the explicit sum over all rank paths.
    #[test]
    fn tt_contraction_matches_definition(tt in tt_strategy()) {
        let dense = tt.contract().unwrap();
        for flat in 0..dense.shape().element_count() {
            let coords = dense.shape().coords_of(flat);
            prop_assert_eq!(dense.get(&coords).unwrap(), tt_entry_by_definition(&tt, &coords));
        }
    }

    /// Point queries reproduce the materialized grid for every catalog
    /// construction small enough to materialize.
    #[test]
    fn lazy_entry_matches_dense_grids(which in 0..5usize, raw in any::<usize>()) {
        let (kind, k) = [
            (FractalKind::Cantor, 4),
            (FractalKind::Sierpinski, 3),
            (FractalKind::Menger, 2),
            (FractalKind::CantorDust, 2),
            (FractalKind::Vicsek3d, 2),
        ][which].clone();
        let spec = catalog(&kind).unwrap();
        let dense = spec.iterate(k).unwrap();
        let flat = raw % dense.shape().element_count();
        let idx = MultiIndex::new(dense.shape().coords_of(flat));
        prop_assert_eq!(spec.lazy_entry(k, &idx).unwrap(), dense.entry(&idx).unwrap());
    }

    /// Step volumes strictly decrease exactly when the defining tensor
    /// drops at least one cell.
    #[test]
    fn volumes_decrease_iff_cells_are_dropped(
        n in 2..=3usize,
        order in 1..=3usize,
        raw in prop::collection::vec(0..=1u64, 27),
    ) {
        let len = n.pow(order as u32);
        let mut data: Vec<u64> = raw[..len].to_vec();
        if data.iter().all(|&v| v == 0) {
            data[0] = 1;
        }
        let shape = Shape::new(vec![n; order]).unwrap();
        let spec = FractalSpec::new("random", DenseTensor::new(shape, data).unwrap()).unwrap();
        let volumes = spec.volume_sequence(5);
        let drops = spec.kept_cells() < len as u64;
        prop_assert_eq!(volumes.is_strictly_decreasing(), drops);
    }
}
