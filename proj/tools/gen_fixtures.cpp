// Regenerates the versioned fixture files under fixtures/.

#include "ka/io_json.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "fixtures";
  using namespace ka;
  {
    std::ofstream out(dir + "/g2_orthonormal.json");
    out << fixtures_to_json(g2_fixture_search()).dump(2) << "\n";
  }
  {
    std::ofstream out(dir + "/null_metric.json");
    out << metric_to_json(QuadraticSpace::null_basis()).dump(2) << "\n";
  }
  {
    Json pts = Json::array();
    for (const auto& p : default_sample_points()) {
      Json row = Json::array();
      for (const auto& c : p) row.push_back(to_string(c));
      pts.push_back(row);
    }
    std::ofstream out(dir + "/sample_points.json");
    out << Json{{"points", pts}}.dump(2) << "\n";
  }
  std::cout << "fixtures written to " << dir << "\n";
  return 0;
}
