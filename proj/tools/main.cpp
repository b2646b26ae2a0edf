// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "eigdecoh/cli/commands.hpp"

int main(int argc, char** argv) { return eigdecoh::cli::run(argc, argv); }
