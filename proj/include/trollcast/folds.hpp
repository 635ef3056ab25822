#pragma once

#include <cstdint>
#include <vector>

namespace trollcast {

// Stratified k-fold assignment for binary labels. Within each class, rows
// are shuffled deterministically and dealt round-robin; the second class
// starts where the first left off so fold sizes differ by at most one, and
// per-class counts per fold differ by at most one. Throws when a class has
// fewer than k members.
std::vector<uint32_t> stratified_kfold(const std::vector<uint8_t>& labels, uint32_t k,
                                       uint64_t rng_seed);

}  // namespace trollcast
