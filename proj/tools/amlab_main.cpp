#include "amlab/cli.hpp"

int main(int argc, char** argv) {
    return amlab::cli::run(argc, argv);
}
