/**
 * @file   verdict.hpp
 * @brief  Result of an identity check: pass/fail, the number of checked
 *         instances, and a certificate for the first failure.
 */
#pragma once

#include <cstddef>
#include <string>
#include <utility>

namespace hchow {

struct Verdict {
    bool ok = true;
    std::size_t checks = 0;
    std::string failure;  // certificate of the first failing case

    // Counts one check. The message is only built when the check fails.
    template <class MakeMessage>
    bool expect(bool cond, MakeMessage&& make_message) {
        ++checks;
        if (!cond && ok) {
            ok = false;
            failure = std::forward<MakeMessage>(make_message)();
        }
        return cond;
    }

    void merge(const Verdict& other, const std::string& context = {}) {
        checks += other.checks;
        if (!other.ok && ok) {
            ok = false;
            failure = context.empty() ? other.failure : context + ": " + other.failure;
        }
    }
};

}  // namespace hchow
