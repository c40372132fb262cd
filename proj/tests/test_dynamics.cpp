#include <doctest.h>

#include <cmath>

#include "coalspec/dynamics.hpp"
#include "coalspec/errors.hpp"
#include "coalspec/generator.hpp"
#include "coalspec/oracle.hpp"
#include "coalspec/spectral.hpp"
#include "support.hpp"

using namespace coalspec;

namespace {

SetPartition P(const char* text) { return SetPartition::parse(text); }

BigRat Q(const char* text) { return BigRat::parse(text); }

}  // namespace

TEST_CASE("bs_transition basics") {
  const auto pi = P("1,2|3|4");
  CHECK(bs_transition(pi, pi, 0.0) == 1.0);
  CHECK(bs_transition(pi, P("1,2,3|4"), 0.0) == 0.0);
  CHECK(bs_transition(pi, P("1,3|2|4"), 1.0) == 0.0);
  CHECK(bs_transition(pi, pi, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(bs_transition(pi, pi, -0.5), domain_error);
  CHECK_THROWS_AS(bs_transition(pi, SetPartition::singletons(5), 1.0), domain_error);
}

TEST_CASE("bs_transition at ln 2 against the series exponential") {
  const auto lattice = PartitionLattice::enumerate(3);
  const auto p = oracle::matexp_series(oracle::to_dense(build_generator(lattice, Model::bolthausen_sznitman)),
                                       std::log(2.0));
  const double closed = bs_transition(SetPartition::singletons(3), SetPartition::single_block(3), std::log(2.0));
  CHECK(std::abs(closed - p(0, static_cast<Eigen::Index>(lattice->top()))) < 1e-12);
  // x = 1/2: 3/8 exactly.
  CHECK(std::abs(closed - 0.375) < 1e-14);
}

TEST_CASE("bs_transition_exact") {
  for (const auto& pi : support::partitions_of(4)) {
    for (const auto& rho : support::partitions_of(4)) {
      CHECK(bs_transition_exact(pi, rho, BigRat(1)) == (pi == rho ? 1 : 0));
      if (!support::refines(pi, rho)) CHECK(bs_transition_exact(pi, rho, Q("1/3")) == 0);
    }
  }
  CHECK(bs_transition_exact(SetPartition::singletons(2), SetPartition::single_block(2), Q("1/2")) == Q("1/2"));
  CHECK_THROWS_AS(bs_transition_exact(SetPartition::singletons(2), SetPartition::single_block(2), BigRat(0)),
                  domain_error);
}

TEST_CASE("bs_green") {
  const auto delta3 = SetPartition::singletons(3);
  CHECK(bs_green(delta3, SetPartition::single_block(3)).infinite);
  CHECK(bs_green(delta3, SetPartition::single_block(3)).str() == "inf");
  CHECK(bs_green(P("1,2|3"), P("1,3|2")) == GreenEntry{});
  CHECK(bs_green(delta3, P("1,2|3")).value == Q("1/4"));
  CHECK(bs_green(delta3, delta3).value == Q("1/2"));

  for (int n = 2; n <= 5; ++n) {
    const auto lattice = PartitionLattice::enumerate(n);
    const auto q = build_generator(lattice, Model::bolthausen_sznitman);
    const auto fundamental = oracle::fundamental_matrix(q);
    for (std::size_t r = 0; r < lattice->size(); ++r) {
      for (std::size_t c = 0; c < lattice->size(); ++c) {
        const auto g = bs_green(lattice->at(r), lattice->at(c));
        if (c == lattice->top()) {
          CHECK(g.infinite);
        } else {
          CHECK_FALSE(g.infinite);
          CHECK(g.value == fundamental.get(r, c));
        }
      }
    }
  }
}

TEST_CASE("bs_hitting") {
  const auto delta4 = SetPartition::singletons(4);
  const auto target = P("1,2|3|4");
  const auto q = build_generator(PartitionLattice::enumerate(4), Model::bolthausen_sznitman);
  CHECK(bs_hitting(delta4, target) == oracle::hitting_bruteforce(q, delta4, target));
  CHECK(bs_hitting(delta4, target) == Q("1/9"));
  CHECK(bs_hitting(target, target) == 1);
  CHECK(bs_hitting(P("1,3|2|4"), target) == 0);
  CHECK_THROWS_AS(bs_hitting(delta4, SetPartition::single_block(4)), domain_error);

  for (int n = 1; n <= 5; ++n) {
    const auto lattice = PartitionLattice::enumerate(n);
    const auto qn = build_generator(lattice, Model::bolthausen_sznitman);
    for (const auto& rho : lattice->elements()) {
      if (rho.size() == 1) continue;
      const auto brute = oracle::hitting_bruteforce_all(qn, rho);
      for (std::size_t k = 0; k < lattice->size(); ++k) {
        const auto h = bs_hitting(lattice->at(k), rho);
        CHECK(h == brute[k]);
        CHECK(h >= 0);
        CHECK(h <= 1);
        CHECK((h == 0) == !support::refines(lattice->at(k), rho));
        // h = g (|rho| - 1)
        CHECK(h == bs_green(lattice->at(k), rho).value * BigRat(static_cast<long>(rho.size()) - 1));
      }
    }
  }
}

TEST_CASE("bs_block_green") {
  for (int n = 2; n <= 8; ++n) {
    for (int i = 2; i <= n; ++i) CHECK(bs_block_green(i, i, n) == BigRat(BigInt(1), BigInt(i - 1)));
  }
  for (int i = 3; i <= 4; ++i) {
    const auto delta = SetPartition::singletons(i);
    BigRat sum;
    for (const auto& rho : coarsenings(delta)) {
      if (rho.size() == 2) sum += bs_green(delta, rho).value;
    }
    CHECK(bs_block_green(i, 2, i) == sum);
  }
  CHECK(bs_block_green(3, 2, 5) == Q("3/4"));
  for (int n = 2; n <= 12; ++n) {
    const auto fund = oracle::fundamental_matrix(bs_block_generator(n));
    for (int i = 2; i <= n; ++i) {
      for (int j = 2; j <= i; ++j) CHECK(bs_block_green(i, j, n) == fund.at_blocks(i, j));
    }
  }
  CHECK(bs_block_green(4, 2, 4) == Q("13/18"));
  CHECK_THROWS_AS(bs_block_green(3, 1, 3), domain_error);
  CHECK_THROWS_AS(bs_block_green(3, 4, 5), domain_error);
  CHECK_THROWS_AS(bs_block_green(6, 2, 5), domain_error);
}

TEST_CASE("kingman_hitting") {
  const auto delta3 = SetPartition::singletons(3);
  CHECK(kingman_hitting(delta3, SetPartition::single_block(3)) == 1);
  CHECK(kingman_hitting(delta3, P("1,2|3")) == Q("1/3"));
  CHECK(kingman_hitting(P("1,2|3"), P("1,3|2")) == 0);
  CHECK(kingman_hitting(delta3, delta3) == 1);
  CHECK_THROWS_AS(kingman_hitting(delta3, SetPartition::singletons(4)), domain_error);

  for (int n = 1; n <= 5; ++n) {
    const auto lattice = PartitionLattice::enumerate(n);
    const auto q = build_generator(lattice, Model::kingman);
    const auto top = SetPartition::single_block(n);
    for (const auto& rho : lattice->elements()) {
      const auto brute = oracle::hitting_bruteforce_all(q, rho);
      for (std::size_t k = 0; k < lattice->size(); ++k) {
        const auto& pi = lattice->at(k);
        const auto h = kingman_hitting(pi, rho);
        CHECK(h == brute[k]);
        if (!support::refines(pi, rho)) {
          CHECK(h == 0);
          continue;
        }
        const BigRat chain_ratio(count_maximal_chains(pi, rho) * count_maximal_chains(rho, top),
                                 count_maximal_chains(pi, top));
        CHECK(h == chain_ratio);
      }
    }
  }
}

TEST_CASE("transition_via_triple") {
  for (int n = 1; n <= 6; ++n) {
    const auto lattice = PartitionLattice::enumerate(n);
    for (Model model : {Model::bolthausen_sznitman, Model::kingman}) {
      const auto triple = model_triple(model, lattice);
      const auto id = transition_via_triple(triple, 0.0);
      CHECK((id - Eigen::MatrixXd::Identity(id.rows(), id.cols())).cwiseAbs().maxCoeff() < 1e-12);
      for (double t : {0.1, 0.5, 1.0, 5.0}) {
        const auto p = transition_via_triple(triple, t);
        CHECK((p.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-10);
        CHECK(p.minCoeff() >= -1e-12);
      }
    }
  }
  CHECK_THROWS_AS(transition_via_triple(bs_block_triple(3), -1.0), domain_error);
}

TEST_CASE("transition_via_triple against closed form and series") {
  for (int n = 2; n <= 5; ++n) {
    const auto lattice = PartitionLattice::enumerate(n);
    const auto spectral_bs = transition_via_triple(bs_triple(lattice), 1.0);
    const auto closed = bs_transition_matrix(*lattice, 1.0);
    CHECK((spectral_bs - closed).cwiseAbs().maxCoeff() < 1e-12);

    const auto qk = oracle::to_dense(build_generator(lattice, Model::kingman));
    const auto spectral_k = transition_via_triple(kingman_triple(lattice), 1.0);
    CHECK((spectral_k - oracle::matexp_series(qk, 1.0)).cwiseAbs().maxCoeff() < 1e-10);

    for (std::size_t r = 0; r < lattice->size(); ++r) {
      for (std::size_t c = 0; c < lattice->size(); ++c) {
        const bool below = support::refines(lattice->at(r), lattice->at(c));
        const auto rr = static_cast<Eigen::Index>(r);
        const auto cc = static_cast<Eigen::Index>(c);
        CHECK((closed(rr, cc) > 0) == below);
        CHECK((spectral_k(rr, cc) > 0) == below);
      }
    }
  }
}

TEST_CASE("semigroup property") {
  for (int n = 2; n <= 5; ++n) {
    const auto lattice = PartitionLattice::enumerate(n);
    for (Model model : {Model::bolthausen_sznitman, Model::kingman}) {
      const auto triple = model_triple(model, lattice);
      const Eigen::MatrixXd lhs = transition_via_triple(triple, 0.3) * transition_via_triple(triple, 0.7);
      CHECK((lhs - transition_via_triple(triple, 1.0)).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("exact transition matrices") {
  const auto lattice = PartitionLattice::enumerate(4);
  const auto bs = transition_via_triple_exact(bs_triple(lattice), Q("1/2"));
  for (std::size_t r = 0; r < lattice->size(); ++r) {
    BigRat sum;
    for (std::size_t c = 0; c < lattice->size(); ++c) {
      CHECK(bs.get(r, c) == bs_transition_exact(lattice->at(r), lattice->at(c), Q("1/2")));
      sum += bs.get(r, c);
    }
    CHECK(sum == 1);
  }
  const auto k = transition_via_triple_exact(kingman_triple(lattice), BigRat(1));
  CHECK(k == TriMatrix::identity_like(k));

  // Block-counting Kingman: staying at i blocks for time t has probability x^{C(i,2)}.
  const auto kb = transition_via_triple_exact(kingman_block_triple(4), Q("1/2"));
  CHECK(kb.at_blocks(4, 4) == Q("1/64"));
  CHECK(kb.at_blocks(2, 2) == Q("1/2"));
  CHECK(kb.at_blocks(2, 1) == Q("1/2"));
}
