#include "cli.hpp"

int main(int argc, char** argv) {
    return penosc::cli::run(argc, argv);
}
