#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cmvp {

/// Memoized function of an integer index, n >= first().
///
/// Values are computed on first access in index order and cached. The cache
/// is shared between copies, so copying a sequence is cheap and copies see
/// each other's fills. Concurrent readers are safe: filling is idempotent
/// and serialized by a mutex. A generator must not query the sequence it
/// belongs to (the fill lock is held while it runs).
template <typename T>
class LazySequence {
public:
    using Generator = std::function<T(long)>;

    LazySequence() : LazySequence([](long) { return T(0); }) {}

    explicit LazySequence(Generator gen, long first = 0)
        : state_(std::make_shared<State>(std::move(gen), first, std::nullopt)) {}

    /// A finite table; querying past its end throws std::out_of_range.
    static LazySequence from_values(std::vector<T> values, long first = 0) {
        auto table = std::make_shared<const std::vector<T>>(std::move(values));
        const long count = static_cast<long>(table->size());
        LazySequence seq([table, first](long n) { return (*table)[static_cast<std::size_t>(n - first)]; },
                         first);
        seq.state_->limit = count;
        return seq;
    }

    [[nodiscard]] long first() const noexcept { return state_->first; }

    /// Number of available indices, or nullopt when unbounded.
    [[nodiscard]] std::optional<long> extent() const noexcept { return state_->limit; }

    T operator()(long n) const {
        State& s = *state_;
        if (n < s.first || (s.limit && n >= s.first + *s.limit)) {
            throw std::out_of_range("sequence index " + std::to_string(n) + " outside its table");
        }
        const auto idx = static_cast<std::size_t>(n - s.first);
        {
            std::shared_lock lock(s.mutex);
            if (idx < s.cache.size()) return s.cache[idx];
        }
        std::unique_lock lock(s.mutex);
        while (s.cache.size() <= idx) {
            s.cache.push_back(s.gen(s.first + static_cast<long>(s.cache.size())));
        }
        return s.cache[idx];
    }

private:
    struct State {
        State(Generator g, long f, std::optional<long> l) : gen(std::move(g)), first(f), limit(l) {}
        Generator gen;
        long first;
        std::optional<long> limit;
        std::shared_mutex mutex;
        std::vector<T> cache;
    };

    std::shared_ptr<State> state_;
};

}  // namespace cmvp
