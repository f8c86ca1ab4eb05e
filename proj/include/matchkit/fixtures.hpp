#ifndef MATCHKIT_FIXTURES_HPP
#define MATCHKIT_FIXTURES_HPP

#include "matchkit/model.hpp"

#include <string>
#include <vector>

namespace matchkit::fixtures {

/// One firm, one worker. The firm rejects the worker ({} over {w}); the
/// worker wants the firm.
Market ex1();
/// One firm, one worker. The firm wants the worker; the worker prefers
/// staying unmatched.
Market ex2();
/// Three firms and three workers with pairwise subset preferences, after
/// Roth and Sotomayor's Example 6.9.
Market m69();
/// Variant of m69 where f3 and all workers rank larger sets higher.
Market m69b();

/// The single link (f, w) in ex1.
Matching mu1(const Market& ex1_market);
/// The single link (f, w) in ex2.
Matching mu2(const Market& ex2_market);
/// w1: f2 f3, w2: f1 f3, w3: f1 f2 in m69.
Matching mu3(const Market& m69_market);
/// w1: f2 f3, w2: f1 f3, w3: f1 f2 f3 in m69b.
Matching mu4(const Market& m69b_market);

/// Market-file text of each fixture.
std::string ex1_text();
std::string ex2_text();
std::string m69_text();
std::string m69b_text();

/// Subset of one side by labels, for building fixtures and tests.
SubsetMask labels_to_set(const std::vector<std::string>& roster, const std::vector<std::string>& labels);

} // namespace matchkit::fixtures

#endif
