pub mod interval;
pub mod pipoly;
pub mod engine;
pub mod series;
pub mod appendix_a;
pub mod c2;
pub mod c4c6c8;
pub mod taylor;
pub mod lambda;
pub mod minbranch;

use engine::Certificate;

/// Names accepted by [`certify_target`].
pub const TARGETS: [&str; 7] = ["appendix-a", "c2", "c4c6c8", "taylor", "lambda", "min-branch", "all"];

/// Taylor prefix length used by the combined runs.
pub const TAYLOR_ORDER: u32 = 50;

/// All six certificates, each later one using the earlier ones as prerequisites.
pub fn certify_all(depth: u32, tau_max: f64) -> Vec<Certificate> {
    let mut all = certify_all_but_min(depth, tau_max);
    all.push(minbranch::certify_min_branch());
    all
}

/// A single target, or `all` as a composite.
pub fn certify_target(target: &str, depth: u32, tau_max: f64) -> Option<Certificate> {
    let c = match target {
        "appendix-a" => appendix_a::certify_appendix_a_with(depth),
        "c2" => c2::certify_c2_with(depth),
        "c4c6c8" => {
            let a = appendix_a::certify_appendix_a_with(depth);
            let c2 = c2::certify_c2_with(depth);
            c4c6c8::certify_c4_c6_c8_with(depth, &[&a, &c2])
        }
        "taylor" => taylor::certify_taylor_positivity(TAYLOR_ORDER),
        "lambda" => {
            let mut all = certify_all_but_min(depth, tau_max);
            all.pop().expect("lambda certificate")
        }
        "min-branch" => minbranch::certify_min_branch(),
        "all" => Certificate::composite("all", &[], certify_all(depth, tau_max)),
        _ => return None,
    };
    Some(c)
}

fn certify_all_but_min(depth: u32, tau_max: f64) -> Vec<Certificate> {
    let a = appendix_a::certify_appendix_a_with(depth);
    let c2 = c2::certify_c2_with(depth);
    let c468 = c4c6c8::certify_c4_c6_c8_with(depth, &[&a, &c2]);
    let taylor = taylor::certify_taylor_positivity(TAYLOR_ORDER);
    let lambda = lambda::certify_lambda_master_with(tau_max, depth, &c2, &c468, &taylor);
    vec![a, c2, c468, taylor, lambda]
}
