//! Built-in instance families: uniform matroids, duals, direct sums,
//! principal-extension chains, a graphic matroid, and derived polymatroids.
//! These back the `experiment` subcommands and the acceptance suite.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::polymatroid::Polymatroid;
use crate::snapper::BundleSpec;
use crate::subset::{table_len, Subset};

#[derive(Clone, Debug)]
pub struct NamedMatroid {
    pub name: String,
    pub matroid: Matroid,
}

#[derive(Clone, Debug)]
pub struct NamedPair {
    pub name: String,
    pub matroid: Matroid,
    pub subsets: Vec<Subset>,
}

#[derive(Clone, Debug)]
pub struct NamedPolymatroid {
    pub name: String,
    pub polymatroid: Polymatroid,
}

pub const CATALOG_NAMES: &[&str] = &["default", "uniforms", "duals", "sums", "extensions"];

fn named(name: impl Into<String>, matroid: Matroid) -> NamedMatroid {
    NamedMatroid { name: name.into(), matroid }
}

fn uniform(r: usize, n: usize) -> Matroid {
    Matroid::uniform(r, n).expect("catalog uniforms are in range")
}

/// Graphic matroid of the complete graph K4: six edges, rank
/// `4 - #components` of the picked subgraph.
pub fn k4() -> Matroid {
    let edges: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let table: Vec<u32> = (0..table_len(6))
        .map(|mask| {
            let mut parent: Vec<usize> = (0..4).collect();
            fn find(parent: &mut Vec<usize>, x: usize) -> usize {
                if parent[x] != x {
                    let root = find(parent, parent[x]);
                    parent[x] = root;
                }
                parent[x]
            }
            for (i, &(a, b)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
            }
            let components = (0..4).filter(|&v| find(&mut parent, v) == v).count();
            (4 - components) as u32
        })
        .collect();
    Matroid::from_rank_table(6, table).expect("graphic rank functions are matroids")
}

fn uniform_family() -> Vec<NamedMatroid> {
    let mut out = Vec::new();
    for n in 1..=7usize {
        for r in 1..=n {
            // high corank-one bundles on rank >= 5 hosts with many flats
            // blow past desk scale (tens of millions of dragon-Hall-Rado
            // points); the family is capped at rank 4 for n >= 6
            if n >= 6 && !(1..=4).contains(&r) {
                continue;
            }
            if n == 7 && r == 1 {
                continue;
            }
            out.push(named(format!("u_{r}_{n}"), uniform(r, n)));
        }
    }
    out
}

fn dual_family() -> Vec<NamedMatroid> {
    let mut out = vec![named("k4_dual", k4().dual())];
    for m in extension_family() {
        out.push(named(format!("{}_dual", m.name), m.matroid.dual()));
    }
    out
}

fn sum_family() -> Vec<NamedMatroid> {
    let u11 = uniform(1, 1);
    let u12 = uniform(1, 2);
    let u13 = uniform(1, 3);
    let u23 = uniform(2, 3);
    let mut out = Vec::new();
    let mut push = |name: &str, m: Result<Matroid>| {
        out.push(named(name, m.expect("catalog sums fit the cap")));
    };
    push("u11+u11", u11.direct_sum(&u11));
    push("u11+u12", u11.direct_sum(&u12));
    push("u12+u12", u12.direct_sum(&u12));
    push("u12+u13", u12.direct_sum(&u13));
    push("u23+u11", u23.direct_sum(&u11));
    push("u23+u23", u23.direct_sum(&u23));
    out
}

/// Chains of principal extensions, each step extending at a flat.
fn extension_family() -> Vec<NamedMatroid> {
    let mut out = Vec::new();
    let u23 = uniform(2, 3);
    // parallel chain: extend twice at point flats
    let p1 = u23.principal_extension(Subset::singleton(0)).expect("point is a flat");
    let p2 = p1.principal_extension(Subset::singleton(1)).expect("point is a flat");
    out.push(named("u23+p0", p1));
    out.push(named("u23+p0+p1", p2));
    // free chain: extending at the full flat is the free extension
    let f1 = u23.principal_extension(Subset::full(3)).expect("ground set is a flat");
    let f2 = f1.principal_extension(Subset::full(4)).expect("ground set is a flat");
    out.push(named("u23+free", f1));
    out.push(named("u23+free2", f2));
    // rank-3 chain through a line flat: not uniform, not graphic
    let u34 = uniform(3, 4);
    let line = Subset::from_elements([0, 1]);
    let l1 = u34.principal_extension(line).expect("line is a flat of u34");
    out.push(named("u34+line01", l1.clone()));
    let l2 = l1.principal_extension(l1.closure(Subset::from_elements([2, 3]))).unwrap();
    out.push(named("u34+line01+line23", l2));
    out
}

/// Matroid catalog for a named family; `default` concatenates everything.
pub fn matroids(catalog: &str) -> Result<Vec<NamedMatroid>> {
    match catalog {
        "uniforms" => Ok(uniform_family()),
        "duals" => Ok(dual_family()),
        "sums" => Ok(sum_family()),
        "extensions" => Ok(extension_family()),
        "default" => {
            let mut out = uniform_family();
            out.push(named("k4", k4()));
            out.extend(dual_family());
            out.extend(sum_family());
            out.extend(extension_family());
            Ok(out)
        }
        other => Err(Error::InvalidInput(format!(
            "unknown catalog {other:?}; available: {CATALOG_NAMES:?}"
        ))),
    }
}

/// The loopless members of a catalog.
pub fn loopless_matroids(catalog: &str) -> Result<Vec<NamedMatroid>> {
    Ok(matroids(catalog)?.into_iter().filter(|m| m.matroid.is_loopless()).collect())
}

fn halves(n: usize) -> (Subset, Subset) {
    let mid = n / 2;
    (Subset::from_elements(0..mid.max(1)), Subset::from_elements(mid.max(1).min(n - 1)..n))
}

/// (matroid, subsets) pairs with at most four subsets each, plus the
/// multisymmetric lifts of the small polymatroid catalog.
pub fn pairs(catalog: &str) -> Result<Vec<NamedPair>> {
    let mut out = Vec::new();
    for nm in matroids(catalog)? {
        let n = nm.matroid.n();
        let full = Subset::full(n);
        out.push(NamedPair {
            name: format!("{}: (E)", nm.name),
            matroid: nm.matroid.clone(),
            subsets: vec![full],
        });
        if n >= 2 {
            out.push(NamedPair {
                name: format!("{}: (0 | E)", nm.name),
                matroid: nm.matroid.clone(),
                subsets: vec![Subset::singleton(0), full],
            });
            let (a, b) = halves(n);
            out.push(NamedPair {
                name: format!("{}: halves", nm.name),
                matroid: nm.matroid.clone(),
                subsets: vec![a, b],
            });
        }
        if n >= 3 {
            out.push(NamedPair {
                name: format!("{}: overlap chain", nm.name),
                matroid: nm.matroid.clone(),
                subsets: vec![
                    Subset::from_elements([0, 1]),
                    Subset::from_elements([1, 2]),
                    full,
                ],
            });
        }
        if n == 4 {
            out.push(NamedPair {
                name: format!("{}: singletons", nm.name),
                matroid: nm.matroid.clone(),
                subsets: (0..4).map(Subset::singleton).collect(),
            });
        }
    }
    for np in polymatroids(catalog)? {
        let total: u32 = np.polymatroid.cage().iter().sum();
        // a zero cage entry would make an empty block, which is not a subset
        let positive_cage = np.polymatroid.cage().iter().all(|&a| a > 0);
        if total <= 8 && np.polymatroid.m() <= 4 && positive_cage {
            let (matroid, subsets) = np.polymatroid.multisymmetric_lift()?;
            out.push(NamedPair { name: format!("lift of {}", np.name), matroid, subsets });
        }
    }
    Ok(out)
}

/// Polymatroid catalog: hand-picked tables, restrictions, dragon-Hall-Rado
/// polymatroids, and matroids reread as polymatroids.
pub fn polymatroids(catalog: &str) -> Result<Vec<NamedPolymatroid>> {
    let mut out = Vec::new();
    let mut push = |name: String, p: Polymatroid| {
        out.push(NamedPolymatroid { name, polymatroid: p });
    };
    push("p_star".into(), Polymatroid::from_rank_table(2, vec![1, 2], vec![0, 1, 2, 2])?);
    push("u12_type".into(), Polymatroid::from_rank_table(2, vec![1, 1], vec![0, 1, 1, 1])?);
    push("single_r2_a2".into(), Polymatroid::from_rank_table(1, vec![2], vec![0, 2])?);
    push("single_r2_a3".into(), Polymatroid::from_rank_table(1, vec![3], vec![0, 2])?);
    push("single_r3_a4".into(), Polymatroid::from_rank_table(1, vec![4], vec![0, 3])?);
    push("boolean_2".into(), Polymatroid::from_rank_table(2, vec![1, 1], vec![0, 1, 1, 2])?);
    push("boolean_21".into(), Polymatroid::from_rank_table(2, vec![2, 1], vec![0, 2, 1, 3])?);

    let hosts: Vec<NamedMatroid> = match catalog {
        "default" => vec![
            named("u23", uniform(2, 3)),
            named("u24", uniform(2, 4)),
            named("u34", uniform(3, 4)),
            named("u25", uniform(2, 5)),
            named("u35", uniform(3, 5)),
            named("k4", k4()),
        ],
        _ => matroids(catalog)?.into_iter().filter(|m| m.matroid.n() <= 6).take(6).collect(),
    };
    for nm in &hosts {
        let n = nm.matroid.n();
        let full = Subset::full(n);
        push(
            format!("restrict {} to (0|E)", nm.name),
            Polymatroid::restriction(&nm.matroid, &[Subset::singleton(0), full])?,
        );
        if n >= 3 {
            push(
                format!("restrict {} to (01|12|E)", nm.name),
                Polymatroid::restriction(
                    &nm.matroid,
                    &[Subset::from_elements([0, 1]), Subset::from_elements([1, 2]), full],
                )?,
            );
        }
        if nm.matroid.is_loopless() {
            push(
                format!("dhr {} on (0|E)", nm.name),
                Polymatroid::dragon_hall_rado(&nm.matroid, &[Subset::singleton(0), full])?,
            );
        }
    }
    for (r, n) in [(1, 2), (1, 3), (1, 4), (2, 4), (2, 5)] {
        push(
            format!("u_{r}_{n} as polymatroid"),
            Polymatroid::matroid_as_polymatroid(&uniform(r, n)),
        );
    }
    Ok(out)
}

/// Members whose rank table is a matroid rank function (cage all ones).
pub fn matroid_polymatroids(catalog: &str) -> Result<Vec<NamedPolymatroid>> {
    Ok(polymatroids(catalog)?
        .into_iter()
        .filter(|p| p.polymatroid.clone().try_into_matroid().is_ok())
        .collect())
}

/// All-nonnegative exponent sweeps over flats of a loopless matroid, capped.
pub fn nonneg_flat_bundles(matroid: &Matroid, cap: usize) -> Vec<BundleSpec> {
    let flats: Vec<Subset> =
        matroid.flats().into_iter().filter(|f| !f.is_empty()).collect();
    let full = matroid.ground_set();
    let mut out = Vec::new();
    out.push(BundleSpec::new(vec![full], vec![1], false).unwrap());
    out.push(BundleSpec::new(vec![full], vec![2], false).unwrap());
    for &f in &flats {
        if f != full {
            out.push(BundleSpec::new(vec![f, full], vec![1, 1], false).unwrap());
            out.push(BundleSpec::new(vec![f, full], vec![2, 1], false).unwrap());
            out.push(BundleSpec::new(vec![f], vec![1], false).unwrap());
        }
    }
    if flats.len() <= 6 {
        out.push(BundleSpec::new(flats.clone(), vec![1; flats.len()], false).unwrap());
    }
    out.truncate(cap);
    out
}
