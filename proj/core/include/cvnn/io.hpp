#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvnn/certify.hpp"
#include "cvnn/criteria.hpp"
#include "cvnn/dde_sim.hpp"
#include "cvnn/model.hpp"

namespace cvnn {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Network document fields: n, d, A_re, A_im, B_re, B_im, u_re, u_im,
/// delays (n x n of {"const": c} or {"base","amp","phase","kind"}),
/// activations (per node: fR/fI/gR/gI descriptors {"sigma","c1","c2"}),
/// optional cases ([[re, im] per node] per case).
NetworkSpec load_network(const nlohmann::json& doc);
NetworkSpec load_network_file(const std::string& path);
std::vector<VecC> load_cases(const nlohmann::json& doc);  // empty when absent
nlohmann::json network_to_json(const NetworkSpec& net);

nlohmann::json to_json(const Margins& m);
nlohmann::json to_json(const Certificate& c);

/// CSV columns: t, z1R, z1I, ..., znR, znI, norm_inf, norm_1, norm_2
/// (unweighted norms). stride >= 1 picks every stride-th sample; the final
/// sample is always written.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, int stride = 1);

struct CsvTable {
  std::vector<std::string> header;
  Mat rows;
};
CsvTable read_csv(std::istream& is);

void write_matrix_csv(std::ostream& os, const Mat& m);

}  // namespace cvnn
