// Copyright 2026 The MoPS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
////////////////////////////////////////////////////////////////////////////////

#include <gtest/gtest.h>

#include <fstream>

#include "test_support.h"

namespace mops {
namespace {

using testing::RunCommand;

const std::string kCli = MOPS_CLI_PATH;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::TempDir("cli");
    for (const char* name : {"a.txt", "b.txt"}) {
      std::ofstream(dir_ + "/" + name) << "contents of " << name << "\n";
    }
  }

  int Run(const std::string& args, std::string* out = nullptr) {
    std::string ignored;
    return RunCommand("cd " + dir_ + " && " + kCli + " " + args, out ? out : &ignored);
  }

  void SignAndProtect(const std::string& structure) {
    std::string out;
    ASSERT_EQ(Run("sign a.txt b.txt --clock 2020-03-01", &out), 0) << out;
    ASSERT_EQ(Run("protect a.txt.mops.zip b.txt.mops.zip --structure " + structure +
                      " --out p.mops.zip --clock 2020-03-02",
                  &out),
              0)
        << out;
  }

  std::string dir_;
};

TEST_F(CliTest, SignProtectVerify) {
  SignAndProtect("MDS");
  std::string out;
  EXPECT_EQ(Run("verify p.mops.zip --clock 2020-04-01", &out), 0) << out;
  for (const char* column : {"FOLDER", "DOCUMENT", "RESULT", "CATEGORY", "DETAIL"}) {
    EXPECT_NE(out.find(column), std::string::npos) << out;
  }
  EXPECT_NE(out.find("result: valid at 2020-04-01"), std::string::npos) << out;
  EXPECT_EQ(Run("renew p.mops.zip --clock 2021-01-01 --hash SHA-384", &out), 0) << out;
  EXPECT_EQ(Run("verify p.mops.zip --quiet --clock 2021-01-02", &out), 0) << out;
}

TEST_F(CliTest, TamperedDocumentFails) {
  SignAndProtect("SLS");
  std::string out;
  ASSERT_EQ(RunCommand("cd " + dir_ +
                           " && python3 -c \"import zipfile;"
                           "src=zipfile.ZipFile('p.mops.zip');"
                           "dst=zipfile.ZipFile('t.mops.zip','w');"
                           "[dst.writestr(i.filename, src.read(i).replace(b'contents', b'Contents')"
                           " if i.filename=='folder/a.txt' else src.read(i)) for i in src.infolist()];"
                           "dst.close()\"",
                       &out),
            0)
      << out;
  EXPECT_EQ(Run("verify t.mops.zip --clock 2020-04-01", &out), 1) << out;
  EXPECT_NE(out.find("digest-mismatch"), std::string::npos) << out;
}

TEST_F(CliTest, UsageAndIncompatibility) {
  std::string out;
  EXPECT_EQ(Run("", &out), 2) << out;
  EXPECT_EQ(Run("frobnicate", &out), 2) << out;
  ASSERT_EQ(Run("sign a.txt --clock 2020-03-01", &out), 0) << out;
  EXPECT_EQ(Run("protect a.txt.mops.zip --structure NAW --attester TSA --out n.mops.zip "
                "--clock 2020-03-02",
                &out),
            2)
      << out;
  EXPECT_EQ(Run("protect a.txt.mops.zip --structure NAW --out n.mops.zip --clock 2020-03-02",
                &out),
            0)
      << out;
  EXPECT_EQ(Run("verify n.mops.zip --clock 2020-03-03", &out), 0) << out;
}

TEST_F(CliTest, UnreachableServiceExitsThree) {
  std::string out;
  ASSERT_EQ(Run("sign a.txt --clock 2020-03-01", &out), 0) << out;
  EXPECT_EQ(Run("protect a.txt.mops.zip --structure AS --out p.mops.zip --clock 2020-03-02 "
                "--endpoint 127.0.0.1:1",
                &out),
            3)
      << out;
}

TEST_F(CliTest, WizardAndSimulate) {
  std::string out;
  EXPECT_EQ(Run("wizard --retrieval all --storage sets --trust minimal", &out), 0);
  EXPECT_NE(out.find("structure=MTS attester=TSA cumulate=0 batch=0 hash=SHA-256 "
                     "threshold-days=30"),
            std::string::npos)
      << out;
  EXPECT_EQ(Run("wizard --retrieval single --storage few --trust accepts-na", &out), 0);
  EXPECT_NE(out.find("structure=NAW attester=NA"), std::string::npos) << out;
  EXPECT_EQ(Run("wizard --retrieval sometimes --storage few --trust minimal", &out), 2);
  EXPECT_EQ(Run("simulate --structure AS --years 20", &out), 0) << out;
  EXPECT_NE(out.find("hash_renewals=1"), std::string::npos) << out;
  EXPECT_NE(out.find("valid=1"), std::string::npos) << out;
}

}  // namespace
}  // namespace mops
