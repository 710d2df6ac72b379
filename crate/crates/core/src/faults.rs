//! Enumeration of every C-fault of a network.

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::network::{Fault, FaultType, SwitchingNetwork};

/// Number of `fault_type`-faults of `network`, `(|C| + 1)^L`, or `None` on
/// overflow.
pub fn fault_count(network: &SwitchingNetwork, fault_type: FaultType) -> Option<usize> {
    let base = fault_type.constants().len() + 1;
    base.checked_pow(u32::try_from(network.edge_count()).ok()?)
}

/// All `fault_type`-faults, `λ` first. Fault `i` gives edge `e` digit
/// `(i / b^e) mod b` in base `b = |C| + 1`: digit 0 leaves the literal,
/// digit `d` assigns the `d`-th constant of `C`.
pub fn enumerate_faults(network: &SwitchingNetwork, fault_type: FaultType, limits: &Limits) -> Result<Vec<Fault>> {
    enumerate_faults_parallel(network, fault_type, limits, 1)
}

/// As [`enumerate_faults`], split over up to `jobs` threads; the order of
/// the output does not depend on `jobs`.
pub fn enumerate_faults_parallel(
    network: &SwitchingNetwork,
    fault_type: FaultType,
    limits: &Limits,
    jobs: usize,
) -> Result<Vec<Fault>> {
    let total = fault_count(network, fault_type)
        .filter(|&c| c <= limits.max_fault_enumeration)
        .ok_or_else(|| {
            Error::resource(format!(
                "more than {} {fault_type}-faults on {} edges",
                limits.max_fault_enumeration,
                network.edge_count()
            ))
        })?;
    let constants = fault_type.constants();
    let base = constants.len() + 1;
    let edges = network.edge_count();
    let decode = |mut i: usize| -> Fault {
        let mut fault = Fault::empty();
        for e in 0..edges {
            let digit = i % base;
            i /= base;
            if digit > 0 {
                fault.set(e, constants[digit - 1]);
            }
        }
        fault
    };

    let jobs = jobs.clamp(1, total.max(1));
    if jobs == 1 {
        return Ok((0..total).map(decode).collect());
    }
    let chunk = total.div_ceil(jobs);
    let parts: Vec<Vec<Fault>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..total)
            .step_by(chunk)
            .map(|start| {
                let decode = &decode;
                scope.spawn(move || (start..(start + chunk).min(total)).map(decode).collect::<Vec<_>>())
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("enumeration worker")).collect()
    });
    Ok(parts.concat())
}
