#include "coopsense/grid.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace coopsense {

double SymbolGrid::mean_power() const {
  if (data_.empty()) return 0.0;
  double acc = 0.0;
  for (const Complex& v : data_) acc += std::norm(v);
  return acc / static_cast<double>(data_.size());
}

void dump_grid(const SymbolGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write grid file: " + path);
  out << "coopsense-grid 1\n"
      << "antennas " << grid.antennas() << "\n"
      << "subcarriers " << grid.subcarriers() << "\n"
      << "symbols " << grid.symbols() << "\n"
      << "layout interleaved-float64-le antenna,subcarrier,symbol\n\n";
  out.write(reinterpret_cast<const char*>(grid.raw().data()),
            static_cast<std::streamsize>(grid.size() * sizeof(Complex)));
}

SymbolGrid load_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open grid file: " + path);
  std::string line;
  std::getline(in, line);
  if (line != "coopsense-grid 1") throw std::runtime_error("bad grid header: " + path);
  int antennas = 0, subcarriers = 0, symbols = 0;
  while (std::getline(in, line) && !line.empty()) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "antennas") ls >> antennas;
    else if (key == "subcarriers") ls >> subcarriers;
    else if (key == "symbols") ls >> symbols;
    // unknown keys ignored
  }
  if (antennas <= 0 || subcarriers <= 0 || symbols <= 0) {
    throw std::runtime_error("incomplete grid header: " + path);
  }
  SymbolGrid grid(antennas, subcarriers, symbols);
  in.read(reinterpret_cast<char*>(grid.raw().data()),
          static_cast<std::streamsize>(grid.size() * sizeof(Complex)));
  if (!in) throw std::runtime_error("truncated grid payload: " + path);
  return grid;
}

}  // namespace coopsense
