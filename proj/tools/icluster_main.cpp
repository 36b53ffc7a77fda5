#include "icluster/cli.hpp"

int main(int argc, char** argv) {
  return icluster::cli::run({argv + 1, argv + argc});
}
