#![allow(dead_code)]

pub mod brute;
pub mod corpus;
pub mod naive;

use std::path::PathBuf;

use godel_t::meta_nf::Step;
use godel_t::{Context, Term};

/// Compares `actual` with `tests/golden/<name>`. Set `GOLDEN_UPDATE=1` to
/// rewrite the file instead.
pub fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("GOLDEN_UPDATE").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()));
    assert_eq!(actual, expected, "golden file {} differs", path.display());
}

/// Runs `f` on a thread with a large stack.
pub fn big_stack<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    std::thread::Builder::new()
        .stack_size(1 << 29)
        .spawn(f)
        .unwrap()
        .join()
        .unwrap()
}

/// The binders in scope at `path` inside `a`.
pub fn context_at(a: &Term, path: &[Step]) -> Context {
    let mut ctx = Context::new();
    let mut t = a;
    for step in path {
        t = match (t, step) {
            (Term::Lam(n, ty, b), Step::Body) => {
                ctx.push(n.clone(), ty.clone());
                b
            }
            (Term::App(f, _), Step::Fun) => f,
            (Term::App(_, x), Step::Arg) => x,
            _ => panic!("path does not fit the term"),
        };
    }
    ctx
}

/// A file-name fragment for a type.
pub fn slug(ty: &godel_t::Type) -> String {
    ty.to_string().replace(" -> ", "_").replace('(', "L").replace(')', "J")
}
