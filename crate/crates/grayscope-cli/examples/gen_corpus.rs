//! Regenerates the shipped corpus documents from the library constructions.

use grayscope_core::doc::{self, Document};
use grayscope_core::functoriality::FData;
use grayscope_core::gray::free_interchange;
use grayscope_core::omega::{free_chain, globe, CellRef, OmegaFunctor};
use std::collections::BTreeMap;
use std::sync::Arc;

fn main() {
    let root = std::env::var("GRAYSCOPE_CORPUS").unwrap_or_else(|_| "corpus".into());
    let root = std::path::PathBuf::from(root);
    std::fs::create_dir_all(&root).unwrap();
    let write = |name: &str, d: Document| {
        std::fs::write(root.join(name), doc::serialize(&d)).unwrap();
    };

    write("globe-1.json", Document::Omega(doc::omega_to_doc(&globe(1, 2))));
    write("globe-2.json", Document::Omega(doc::omega_to_doc(&globe(2, 2))));
    write("chain-2.json", Document::Omega(doc::omega_to_doc(&free_chain(2, 2))));
    write(
        "free-interchange-1-1.json",
        Document::Gray(doc::gray_to_doc(&free_interchange(1, 1).unwrap())),
    );

    let d0 = Arc::new(globe(0, 2));
    let d1 = Arc::new(globe(1, 2));
    let s = d1.lookup(0, "s0").unwrap();
    let t = d1.lookup(0, "t0").unwrap();
    write(
        "endpoint-source.json",
        Document::Functor(doc::functor_to_doc(&OmegaFunctor::constant(&d0, &d1, s))),
    );
    write(
        "endpoint-target.json",
        Document::Functor(doc::functor_to_doc(&OmegaFunctor::constant(&d0, &d1, t))),
    );
    write(
        "interval-identity.json",
        Document::Functor(doc::functor_to_doc(&OmegaFunctor::identity(&d1))),
    );
    let d2c = Arc::new(globe(2, 2));
    for name in ["s1", "t1"] {
        let img = d2c.lookup(1, name).unwrap();
        let f = OmegaFunctor::from_map(
            &d1,
            &d2c,
            vec![vec![d2c.src(&img), d2c.tgt(&img)], vec![img]],
        );
        write(
            &format!("square-{name}.json"),
            Document::Functor(doc::functor_to_doc(&f)),
        );
    }

    let p = Arc::new(globe(0, 1));
    let i = Arc::new(globe(1, 1));
    let mixed = FData {
        base: i.clone(),
        fibers: vec![p.clone(), i.clone()],
        arrows: [(0usize, OmegaFunctor::constant(&i, &p, CellRef::stored(0, 0)))]
            .into_iter()
            .collect(),
        squares: BTreeMap::new(),
    };
    write("family-mixed-interval.json", Document::FData(doc::fdata_to_doc(&mixed)));

    let d2 = Arc::new(globe(2, 2));
    let e = i.lookup(1, "e").unwrap();
    let t_obj = i.tgt(&e);
    let square = FData {
        base: d2,
        fibers: vec![i.clone(), i.clone()],
        arrows: [
            (0usize, OmegaFunctor::constant(&i, &i, t_obj)),
            (1usize, OmegaFunctor::identity(&i)),
        ]
        .into_iter()
        .collect(),
        squares: [(0usize, vec![e, t_obj.padded(1)])].into_iter().collect(),
    };
    write("family-square.json", Document::FData(doc::fdata_to_doc(&square)));
}
