#include "doctest.h"
#include "mrproj/config.hpp"

using namespace mrproj;

TEST_CASE("a full config parses with lists, comments and defaults") {
  const std::string text =
      "# experiment\n"
      "J = 8\n"
      "dim = 2\n"
      "system = haar\n"
      "system = db2\n"
      "box_lo = -3\n"
      "box_hi = 4.5\n"
      "\n"
      "k_cap = 3, 4\n"
      "p = 1.5\n"
      "p = 4\n"
      "corpus = steps\n"
      "corpus = bumps\n"
      "corpus_count = 5\n"
      "trials = 32\n"
      "seed = 99\n"
      "alpha = 0.25\n"
      "free_signs = 1\n"
      "out_dir = results\n";
  const ExperimentConfig cfg = parse_config_text(text);
  CHECK_EQ(cfg.J, 8);
  CHECK_EQ(cfg.dim, 2);
  CHECK_EQ(cfg.systems, std::vector<std::string>{"haar", "db2"});
  CHECK_EQ(cfg.box_lo, -3.0);
  CHECK_EQ(cfg.box_hi, 4.5);
  CHECK_EQ(cfg.k_cap, MultiIndex{3, 4});
  CHECK_EQ(cfg.p_list, std::vector<double>{1.5, 4.0});
  CHECK_EQ(cfg.corpus, std::vector<std::string>{"steps", "bumps"});
  CHECK_EQ(cfg.corpus_count, 5);
  CHECK_EQ(cfg.trials, 32);
  CHECK_EQ(cfg.seed, 99);
  CHECK_EQ(cfg.alphas, std::vector<double>{0.25});
  CHECK(cfg.free_signs);
  CHECK_EQ(cfg.out_dir, "results");
}

TEST_CASE("omitted keys fall back to documented defaults") {
  const ExperimentConfig cfg = parse_config_text("J = 7\nbox_lo = 0\nbox_hi = 1\n");
  CHECK_EQ(cfg.dim, 1);
  CHECK_EQ(cfg.systems, std::vector<std::string>{"haar"});
  CHECK_EQ(cfg.k_cap, MultiIndex{3});  // J minus the accuracy margin
  CHECK_EQ(cfg.p_list, std::vector<double>{2.0});
  CHECK_EQ(cfg.corpus, std::vector<std::string>{"box"});
  CHECK_EQ(cfg.corpus_count, 8);
  CHECK_EQ(cfg.trials, 100);
  CHECK_EQ(cfg.seed, 1);
  CHECK(cfg.alphas.empty());
  CHECK_FALSE(cfg.free_signs);
  CHECK_EQ(cfg.out_dir, "out");
}

TEST_CASE("dyadic edge reader accepts exactly representable rationals") {
  double v = 0.0;
  CHECK(parse_dyadic("-3", v));
  CHECK_EQ(v, -3.0);
  CHECK(parse_dyadic("1.5", v));
  CHECK_EQ(v, 1.5);
  CHECK(parse_dyadic("-7/8", v));
  CHECK_EQ(v, -0.875);
  CHECK_FALSE(parse_dyadic("1/3", v));   // denominator not a power of two
  CHECK_FALSE(parse_dyadic("0.1", v));   // not binary-terminating
  CHECK_FALSE(parse_dyadic("abc", v));
}

TEST_CASE("malformed configs are rejected with the offending line") {
  // missing required J
  CHECK_THROWS_AS(parse_config_text("box_lo = 0\nbox_hi = 1\n"), config_parse_error);
  // cap above J minus the accuracy margin
  CHECK_THROWS_AS(parse_config_text("J = 6\nbox_lo = 0\nbox_hi = 1\nk_cap = 3\n"),
                  config_parse_error);
  // p = 1 sits outside the open interval
  CHECK_THROWS_AS(parse_config_text("J = 8\nbox_lo = 0\nbox_hi = 1\np = 1\n"),
                  config_parse_error);
  // inverted box
  CHECK_THROWS_AS(parse_config_text("J = 8\nbox_lo = 2\nbox_hi = 1\n"), config_parse_error);
  // edge off the lattice at this J
  CHECK_THROWS_AS(parse_config_text("J = 2\nbox_lo = 0.0625\nbox_hi = 1\n"),
                  config_parse_error);
  // unknown key, with its line number
  try {
    parse_config_text("J = 8\nbox_lo = 0\nbox_hi = 1\nwavelets = 7\n");
    CHECK(false);
  } catch (const config_parse_error& e) {
    CHECK_EQ(e.line, 4);
  }
  // repeated scalar key
  CHECK_THROWS_AS(parse_config_text("J = 8\nJ = 9\nbox_lo = 0\nbox_hi = 1\n"),
                  config_parse_error);
  // malformed line
  CHECK_THROWS_AS(parse_config_text("J = 8\nbox_lo = 0\nbox_hi = 1\nnoise\n"),
                  config_parse_error);
}
