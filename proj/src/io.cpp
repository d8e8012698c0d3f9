#include "bures/io.hpp"

#include <fstream>

namespace bures {

namespace {

json blocks_to_json(const std::vector<Mat>& blocks) {
  json arr = json::array();
  for (const Mat& b : blocks) {
    const int n = static_cast<int>(b.rows());
    json re = json::array(), im = json::array();
    for (int i = 0; i < n; ++i) {
      json rrow = json::array(), irow = json::array();
      for (int j = 0; j < n; ++j) {
        rrow.push_back(b(i, j).real());
        irow.push_back(b(i, j).imag());
      }
      re.push_back(std::move(rrow));
      im.push_back(std::move(irow));
    }
    arr.push_back(json{{"dim", n}, {"re", std::move(re)}, {"im", std::move(im)}});
  }
  return arr;
}

std::pair<Algebra, std::vector<Mat>> blocks_from_json(const json& j) {
  if (!j.contains("blocks") || !j["blocks"].is_array() || j["blocks"].empty()) {
    throw ParseError("expected nonempty \"blocks\" array");
  }
  std::vector<int> dims;
  std::vector<Mat> blocks;
  for (const json& bj : j["blocks"]) {
    if (!bj.contains("dim") || !bj.contains("re") || !bj.contains("im")) {
      throw ParseError("block needs \"dim\", \"re\", \"im\"");
    }
    int n = 0;
    try {
      n = bj["dim"].get<int>();
    } catch (const json::exception&) {
      throw ParseError("\"dim\" must be an integer");
    }
    if (n < 1) throw ParseError("\"dim\" must be >= 1");
    Mat m(n, n);
    const json& re = bj["re"];
    const json& im = bj["im"];
    if (!re.is_array() || !im.is_array() ||
        static_cast<int>(re.size()) != n || static_cast<int>(im.size()) != n) {
      throw ParseError("\"re\"/\"im\" must be dim x dim arrays");
    }
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(re[i].size()) != n ||
          static_cast<int>(im[i].size()) != n) {
        throw ParseError("\"re\"/\"im\" must be dim x dim arrays");
      }
      for (int k = 0; k < n; ++k) {
        double r, v;
        try {
          r = re[i][k].get<double>();
          v = im[i][k].get<double>();
        } catch (const json::exception&) {
          throw ParseError("matrix entries must be numbers");
        }
        m(i, k) = cplx(r, v);
      }
    }
    if (!m.allFinite()) throw ParseError("matrix entries must be finite");
    dims.push_back(n);
    blocks.push_back(std::move(m));
  }
  return {Algebra(dims), std::move(blocks)};
}

void require_kind(const json& j, const char* kind) {
  if (!j.contains("kind") || !j["kind"].is_string() ||
      j["kind"].get<std::string>() != kind) {
    throw ParseError(std::string("expected \"kind\":\"") + kind + "\"");
  }
}

}  // namespace

json algebra_to_json(const Algebra& alg) {
  return json{{"block_dims", alg.block_dims}};
}

json form_to_json(const PositiveForm& nu) {
  json j;
  j["kind"] = "density";
  j["blocks"] = blocks_to_json(nu.densities);
  return j;
}

json vector_to_json(const HSVector& xi) {
  json j;
  j["kind"] = "hs_vector";
  j["blocks"] = blocks_to_json(xi.blocks);
  return j;
}

Algebra algebra_from_json(const json& j) {
  if (!j.contains("block_dims") || !j["block_dims"].is_array() ||
      j["block_dims"].empty()) {
    throw ParseError("algebra needs nonempty \"block_dims\"");
  }
  std::vector<int> dims;
  for (const json& d : j["block_dims"]) {
    int n = 0;
    try {
      n = d.get<int>();
    } catch (const json::exception&) {
      throw ParseError("\"block_dims\" entries must be integers");
    }
    if (n < 1) throw ParseError("\"block_dims\" entries must be >= 1");
    dims.push_back(n);
  }
  return Algebra(dims);
}

PositiveForm form_from_json(const json& j, const TolerancePolicy& tol) {
  require_kind(j, "density");
  auto [alg, blocks] = blocks_from_json(j);
  return PositiveForm(alg, std::move(blocks), tol);
}

HSVector vector_from_json(const json& j) {
  require_kind(j, "hs_vector");
  auto [alg, blocks] = blocks_from_json(j);
  return HSVector(alg, std::move(blocks));
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace bures
