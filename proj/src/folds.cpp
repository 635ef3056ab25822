#include "trollcast/folds.hpp"

#include "trollcast/errors.hpp"
#include "trollcast/util.hpp"

namespace trollcast {

std::vector<uint32_t> stratified_kfold(const std::vector<uint8_t>& labels, uint32_t k,
                                       uint64_t rng_seed) {
    if (k < 2) throw UsageError("stratified_kfold: k must be >= 2");
    size_t counts[2] = {0, 0};
    for (uint8_t y : labels) {
        if (y > 1) throw UsageError("stratified_kfold: labels must be 0/1");
        ++counts[y];
    }
    if (counts[0] < k || counts[1] < k)
        throw DataError("stratified_kfold: each class needs at least k rows");

    std::vector<uint32_t> fold_of(labels.size());
    Rng rng(rng_seed);
    uint32_t offset = 0;
    for (int c = 0; c < 2; ++c) {
        std::vector<size_t> members;
        members.reserve(counts[c]);
        for (size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == c) members.push_back(i);
        rng.shuffle(members);
        for (size_t i = 0; i < members.size(); ++i)
            fold_of[members[i]] = static_cast<uint32_t>((i + offset) % k);
        offset = static_cast<uint32_t>((offset + members.size()) % k);
    }
    return fold_of;
}

}  // namespace trollcast
