//! Lists the built-in catalog and checks the obligations of each entry.
//! Pass `--homfly` to include the checks that compute Homfly polynomials.

use genus2::catalog::{Catalog, Verifier};
use genus2::engine::MemoCache;

fn main() {
    let with_homfly = std::env::args().any(|a| a == "--homfly");
    let cat = Catalog::builtin();
    let cache = MemoCache::in_memory();
    let v = Verifier::new(&cat, &cache);
    for e in cat.entries() {
        if !e.is_available() {
            println!("{:<24} unavailable", e.name);
            continue;
        }
        let results = v.check_entry(e, with_homfly);
        let failed: Vec<String> = results.iter().filter_map(|(o, r)| r.as_ref().err().map(|m| format!("{o:?}: {m}"))).collect();
        println!("{:<24} {:<8} {} checks, {} failed", e.name, e.kind_name(), results.len(), failed.len());
        for f in failed {
            println!("    {f}");
        }
    }
}
