#include <iostream>
#include <variant>

#include "cli.hpp"

int main(int argc, char** argv) {
  auto parsed = v1sign::cli::parse_command_line(argc, argv, std::cout, std::cerr);
  if (const int* code = std::get_if<int>(&parsed)) return *code;
  return v1sign::cli::run(std::get<v1sign::cli::RunConfig>(parsed), std::cout, std::cerr);
}
