#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "cssample/estimators.hpp"
#include "cssample/sketch.hpp"
#include "test_util.hpp"

using namespace css;
using csstest::random_bset;

TEST_CASE("sketch constructor validates its shape") {
  CHECK_NOTHROW(PartitionedSketch(SketchKind::count_min, 3, 16, 4, 2, 1));
  CHECK_THROWS_AS(PartitionedSketch(SketchKind::count_min, 0, 16, 4, 2, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(PartitionedSketch(SketchKind::count_min, 3, 0, 1, 2, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(PartitionedSketch(SketchKind::count_min, 3, 16, 5, 2, 1),
                  std::invalid_argument);  // workers must divide width
  CHECK_THROWS_AS(PartitionedSketch(SketchKind::count_min, 3, 16, 0, 2, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(PartitionedSketch(SketchKind::count_min, 3, 16, 4, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("worker ranges tile the row") {
  PartitionedSketch sk(SketchKind::count_min, 2, 16, 4, 2, 7);
  for (int w = 0; w < 4; ++w) {
    auto [lo, len] = sk.range_of(w);
    CHECK(lo == static_cast<std::uint64_t>(w) * 4);
    CHECK(len == 4);
  }
  CHECK_THROWS_AS(sk.range_of(4), std::out_of_range);
  CHECK_THROWS_AS(sk.range_of(-1), std::out_of_range);
}

TEST_CASE("worker updates touch only their column slice") {
  PartitionedSketch sk(SketchKind::count_min, 3, 16, 4, 2, 7);
  sk.worker_update(1, BSet({1, 2, 3, 4}));
  const auto& c = sk.counters();
  for (int row = 0; row < 3; ++row) {
    for (std::uint64_t col = 0; col < 16; ++col) {
      if (col < 4 || col >= 8) CHECK(c[row * 16 + col] == 0);
    }
  }
}

TEST_CASE("partitioned updates merge to the sequential sketch") {
  SplitMix64 rng(87);
  for (SketchKind kind : {SketchKind::count_min, SketchKind::count_sketch}) {
    for (int workers : {1, 2, 4}) {
      for (int inst = 0; inst < 10; ++inst) {
        const std::uint64_t seed = rng.next();
        const int k = 2 + static_cast<int>(rng.next() % 2);
        PartitionedSketch seq(kind, 3, 16, workers, k, seed);
        PartitionedSketch par(kind, 3, 16, workers, k, seed);
        const int len = 1 + static_cast<int>(rng.next() % 5);
        for (int i = 0; i < len; ++i) {
          BSet t = random_bset(rng, 2 + rng.next() % 6, 30);
          seq.reference_update(t);
          par.update_all(t);
        }
        CHECK(seq.counters() == par.counters());
      }
    }
  }
}

TEST_CASE("count-min estimates dominate the true frequency") {
  SplitMix64 rng(88);
  for (int inst = 0; inst < 20; ++inst) {
    const int k = 2;
    PartitionedSketch sk(SketchKind::count_min, 3, 16, 2, k, rng.next());
    std::vector<BSet> stream;
    const int len = 2 + static_cast<int>(rng.next() % 5);
    for (int i = 0; i < len; ++i) {
      stream.push_back(random_bset(rng, 2 + rng.next() % 5, 20));
      sk.update_all(stream.back());
    }
    for (const auto& [s, freq] : exact_frequency_table(stream, k)) {
      CHECK(sk.query_frequency(s) >= static_cast<std::int64_t>(freq));
    }
  }
}

TEST_CASE("count-min is exact on an isolated heavy pair") {
  // Five copies of {1,2,3}; the three pairs can collide within a row, so the
  // estimate is >= 5 always and == 5 whenever some row keeps (1,2) alone.
  PartitionedSketch sk(SketchKind::count_min, 3, 32, 2, 2, 12345);
  for (int i = 0; i < 5; ++i) sk.update_all(BSet({1, 2, 3}));

  Subset target = Subset::checked({1, 2});
  const std::int64_t est = sk.query_frequency(target);
  CHECK(est >= 5);

  bool clean_row = false;
  for (int row = 0; row < 3; ++row) {
    const auto b = sk.bucket_of(row, target);
    if (b != sk.bucket_of(row, Subset::checked({1, 3})) &&
        b != sk.bucket_of(row, Subset::checked({2, 3}))) {
      clean_row = true;
    }
  }
  if (clean_row) CHECK(est == 5);

  CHECK(sk.query_frequency(Subset::checked({7, 8})) >= 0);
}

TEST_CASE("count-sketch recovers an isolated pair and signs are valid") {
  PartitionedSketch sk(SketchKind::count_sketch, 3, 64, 2, 2, 555);
  for (int i = 0; i < 4; ++i) sk.update_all(BSet({1, 2}));
  CHECK(sk.query_frequency(Subset::checked({1, 2})) == 4);

  for (int row = 0; row < 3; ++row) {
    const int s = sk.sign_of(row, Subset::checked({1, 2}));
    CHECK((s == 1 || s == -1));
  }
}

TEST_CASE("empty sketch queries return zero") {
  for (SketchKind kind : {SketchKind::count_min, SketchKind::count_sketch}) {
    PartitionedSketch sk(kind, 3, 16, 1, 2, 9);
    CHECK(sk.query_frequency(Subset::checked({1, 2})) == 0);
    for (std::int64_t c : sk.counters()) CHECK(c == 0);
  }
}

TEST_CASE("query rejects subsets of the wrong size") {
  PartitionedSketch sk(SketchKind::count_min, 2, 8, 1, 3, 9);
  CHECK_THROWS_AS(sk.query_frequency(Subset::checked({1, 2})),
                  std::invalid_argument);
  CHECK_NOTHROW(sk.query_frequency(Subset::checked({1, 2, 3})));
}

TEST_CASE("sketch accessors expose the configuration") {
  PartitionedSketch sk(SketchKind::count_sketch, 4, 32, 8, 3, 42);
  CHECK(sk.kind() == SketchKind::count_sketch);
  CHECK(sk.depth() == 4);
  CHECK(sk.width() == 32);
  CHECK(sk.workers() == 8);
  CHECK(sk.k() == 3);
  CHECK(sk.counters().size() == 4 * 32);
}
