//! Exact computer algebra for the superrings, superbimodules and DG-algebras
//! that realize a categorical action of quantum sl2 on modules over
//! Grassmannian cohomology.
//!
//! Everything is computed over the rationals, per bidegree, with no floating
//! point anywhere. The crate is organized as:
//!
//! - [`scalar`], [`poly`], [`series`]: exact scalars `a + b*pi` (`pi^2 = 1`),
//!   sparse supercommutative polynomials with Koszul signs, and truncated
//!   bigraded dimension series.
//! - [`omega`]: the rings `Omega_k`, `Omega_{k,k+1}`, chain and shifted
//!   variants, their structure homomorphisms and Chern class recursions.
//! - [`bimod`]: normal forms in `Omega_{k,k±1} ⊗ Omega_{k±1,k}`, the
//!   superbimodule morphisms eta, epsilon, iota, pi, mu, X±, u, and the
//!   verification battery for the commutator decomposition.
//! - [`diagram`]: the extended nilHecke superalgebra of decorated strand
//!   diagrams, rewriting to a normal-form basis, and its polynomial action.
//! - [`dg`]: differentials on all of the above, bidegree-wise homology over Q,
//!   finite Grassmannian cohomology, and cyclotomic nilHecke quotients.
//! - [`uqsl2`]: the decategorified layer - quantum integers, Verma module
//!   actions, the Shapovalov form, and graded-dimension consistency checks.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to use from multiple threads.

pub mod scalar;
pub mod poly;
pub mod series;
pub mod linalg;
pub mod omega;
pub mod bimod;
pub mod diagram;
pub mod dg;
pub mod uqsl2;
pub mod report;
pub mod suites;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("generator `{0}` has no image under this homomorphism")]
    MissingImage(String),

    #[error("non-terminating enumeration: even generator `{0}` has qdeg <= 0")]
    Enumeration(String),

    #[error("exact division failed: nonzero remainder")]
    InexactDivision,

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("invalid argument: {0}")]
    InvalidArg(String),

    #[error("unknown relation `{0}`")]
    UnknownRelation(String),

    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Number of worker threads for bidegree fan-outs.
///
/// Reads `VERMA_THREADS`; defaults to the available parallelism.
pub fn thread_count() -> usize {
    std::env::var("VERMA_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Runs `f` over `items` on up to [`thread_count`] threads, preserving order.
pub fn parallel_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send + Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let threads = thread_count().min(items.len().max(1));
    if threads <= 1 || items.len() <= 1 {
        return items.iter().map(|t| f(t)).collect();
    }
    let mut out: Vec<Option<U>> = Vec::with_capacity(items.len());
    out.resize_with(items.len(), || None);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<&mut Option<U>>> =
        out.iter_mut().map(std::sync::Mutex::new).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= items.len() {
                    break;
                }
                let v = f(&items[i]);
                **slots[i].lock().unwrap() = Some(v);
            });
        }
    });
    out.into_iter().map(|o| o.unwrap()).collect()
}
