//! Small example categories shared by the test suites and the CLI corpus.

use crate::omega::{CatBuilder, NamedRef, OmegaCat};

/// Free category on a linear graph with `pre` plain edges, then one doubled
/// edge `f/g` carrying a 2-cell `m: f => g`, then `post` plain edges:
///
/// ```text
/// v0 -> ... -> v_pre ==f/g==> v_(pre+1) -> ... -> v_(pre+1+post)
/// ```
///
/// All interval composites are stored, so `m` can be whiskered on either
/// side as often as the chain allows.
pub fn two_cell_chain(pre: usize, post: usize, truncation: usize) -> OmegaCat {
    let n = pre + 1 + post;
    let special = pre; // the doubled edge runs from v_pre to v_(pre+1)
    let contains = |i: usize, j: usize| i <= special && special < j;
    let mut b = CatBuilder::new(truncation);
    for v in 0..=n {
        b.object(&format!("v{v}"));
    }
    for i in 0..n {
        for j in (i + 1)..=n {
            if contains(i, j) {
                b.arrow(&format!("f{i}_{j}"), &format!("v{i}"), &format!("v{j}"));
                b.arrow(&format!("g{i}_{j}"), &format!("v{i}"), &format!("v{j}"));
                b.cell(
                    2,
                    &format!("m{i}_{j}"),
                    (&format!("f{i}_{j}"), 0),
                    (&format!("g{i}_{j}"), 0),
                );
            } else {
                b.arrow(&format!("e{i}_{j}"), &format!("v{i}"), &format!("v{j}"));
            }
        }
    }
    let r1 = |n: String| -> NamedRef { (1, n, 0) };
    let r2 = |n: String| -> NamedRef { (2, n, 0) };
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..=n {
                // later interval (j,k) composed after earlier interval (i,j)
                match (contains(j, k), contains(i, j)) {
                    (false, false) => {
                        b.comp(
                            0,
                            r1(format!("e{j}_{k}")),
                            r1(format!("e{i}_{j}")),
                            r1(format!("e{i}_{k}")),
                        );
                    }
                    (true, false) => {
                        for c in ["f", "g"] {
                            b.comp(
                                0,
                                r1(format!("{c}{j}_{k}")),
                                r1(format!("e{i}_{j}")),
                                r1(format!("{c}{i}_{k}")),
                            );
                        }
                        b.comp(
                            0,
                            r2(format!("m{j}_{k}")),
                            r1(format!("e{i}_{j}")),
                            r2(format!("m{i}_{k}")),
                        );
                    }
                    (false, true) => {
                        for c in ["f", "g"] {
                            b.comp(
                                0,
                                r1(format!("e{j}_{k}")),
                                r1(format!("{c}{i}_{j}")),
                                r1(format!("{c}{i}_{k}")),
                            );
                        }
                        b.comp(
                            0,
                            r1(format!("e{j}_{k}")),
                            r2(format!("m{i}_{j}")),
                            r2(format!("m{i}_{k}")),
                        );
                    }
                    (true, true) => unreachable!("single doubled edge"),
                }
            }
        }
    }
    b.build().expect("two-cell chain is valid")
}

/// Two composable 2-cells between parallel 1-cells:
///
/// ```text
/// a ==f/g/h==> b   with  p: f => g,  q: g => h,  qp: f => h
/// ```
pub fn vertical_pair(truncation: usize) -> OmegaCat {
    let mut b = CatBuilder::new(truncation);
    b.object("a").object("b");
    b.arrow("f", "a", "b").arrow("g", "a", "b").arrow("h", "a", "b");
    b.cell(2, "p", ("f", 0), ("g", 0))
        .cell(2, "q", ("g", 0), ("h", 0))
        .cell(2, "qp", ("f", 0), ("h", 0));
    b.comp(
        1,
        (2, "q".into(), 0),
        (2, "p".into(), 0),
        (2, "qp".into(), 0),
    );
    b.build().expect("vertical pair is valid")
}
