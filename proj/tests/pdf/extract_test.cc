// Copyright 2026 The DLA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dla/pdf/extract.h"

#include "dla/eval/pdf_writer.h"
#include "dla/eval/synth.h"
#include "dla/pdf/errors.h"
#include "gtest/gtest.h"
#include "tests/testing/test_util.h"

namespace dla::pdf {
namespace {

using eval::PdfWriter;

std::string OneLinePdf(std::string_view font, std::string_view text,
                       bool compress = true) {
  PdfWriter w(compress);
  const std::string f = w.AddFont({std::string(font)});
  w.AddPage(595, 842,
            "BT /" + f + " 12 Tf 72 700 Td " + eval::PdfString(text) +
                " Tj ET\n");
  return w.Finish("D:20160314120000");
}

TEST(ParseDocumentTest, SingleBoldRun) {
  for (bool compress : {true, false}) {
    ASSERT_OK_AND_ASSIGN(
        const ParsedDocument doc,
        ParseDocument(OneLinePdf("Helvetica-Bold", "Hola", compress), "s"));
    ASSERT_EQ(doc.pages.size(), 1u);
    const ParsedPage& page = doc.pages[0];
    EXPECT_EQ(page.geometry, (PageGeometry{0, 595, 842, 0}));
    ASSERT_EQ(page.spans.size(), 1u);
    EXPECT_EQ(page.spans[0].text, "Hola");
    EXPECT_TRUE(page.spans[0].bold);
    EXPECT_FALSE(page.spans[0].italic);
    EXPECT_EQ(page.spans[0].font_size, 12);
    EXPECT_EQ(page.spans[0].font_name, "Helvetica-Bold");
    // Top-left origin: the baseline at y=700 sits 142pt below the top.
    EXPECT_LT(page.spans[0].bbox.y0, 142);
    EXPECT_GT(page.spans[0].bbox.y1, 142 - 1e-9);
    EXPECT_DOUBLE_EQ(page.spans[0].bbox.x0, 72);
    EXPECT_TRUE(page.image_blocks.empty());
    EXPECT_TRUE(page.link_blocks.empty());
  }
}

TEST(ParseDocumentTest, LinkAnnotation) {
  PdfWriter w;
  w.AddPage(595, 842, "", {{{72, 100, 272, 114}, "https://example.org"}});
  ASSERT_OK_AND_ASSIGN(const ParsedDocument doc,
                       ParseDocument(w.Finish(""), "s"));
  ASSERT_EQ(doc.pages.size(), 1u);
  ASSERT_EQ(doc.pages[0].link_blocks.size(), 1u);
  const LayoutBlock& link = doc.pages[0].link_blocks[0];
  EXPECT_EQ(link.kind, BlockKind::kLink);
  EXPECT_EQ(link.label, LayoutLabel::kLink);
  EXPECT_EQ(link.payload, std::optional<std::string>("https://example.org"));
  EXPECT_NEAR(link.bbox.x0, 72, 1e-9);
  EXPECT_NEAR(link.bbox.y0, 100, 1e-9);
  EXPECT_NEAR(link.bbox.x1, 272, 1e-9);
  EXPECT_NEAR(link.bbox.y1, 114, 1e-9);
}

TEST(ParseDocumentTest, ImagePlacement) {
  PdfWriter w;
  const std::string im = w.AddImage();
  w.AddPage(595, 842, "q 200 0 0 100 72 600 cm /" + im + " Do Q\n");
  ASSERT_OK_AND_ASSIGN(const ParsedDocument doc,
                       ParseDocument(w.Finish(""), "s"));
  ASSERT_EQ(doc.pages[0].image_blocks.size(), 1u);
  const LayoutBlock& image = doc.pages[0].image_blocks[0];
  EXPECT_EQ(image.kind, BlockKind::kImage);
  EXPECT_FALSE(image.payload.has_value());
  EXPECT_NEAR(image.bbox.x0, 72, 1e-9);
  EXPECT_NEAR(image.bbox.y0, 842 - 700, 1e-9);
  EXPECT_NEAR(image.bbox.x1, 272, 1e-9);
  EXPECT_NEAR(image.bbox.y1, 842 - 600, 1e-9);
}

TEST(ParseDocumentTest, EmptyPageHasNoBlocks) {
  PdfWriter w;
  w.AddPage(595, 842, "");
  ASSERT_OK_AND_ASSIGN(const ParsedDocument doc,
                       ParseDocument(w.Finish(""), "s"));
  ASSERT_EQ(doc.pages.size(), 1u);
  EXPECT_TRUE(doc.pages[0].spans.empty());
  EXPECT_TRUE(doc.pages[0].image_blocks.empty());
  EXPECT_TRUE(doc.pages[0].link_blocks.empty());
}

TEST(ParseDocumentTest, MetadataDateAndHash) {
  const std::string pdf = OneLinePdf("Times-Roman", "x");
  ASSERT_OK_AND_ASSIGN(const ParsedDocument doc, ParseDocument(pdf, "src"));
  EXPECT_EQ(doc.publication_date, absl::CivilDay(2016, 3, 14));
  EXPECT_EQ(doc.source_id, "src");
  EXPECT_EQ(doc.content_hash.size(), 64u);
  EXPECT_EQ(doc.doc_id, MakeDocId("src", doc.content_hash));
}

TEST(ParseDocumentTest, FileNameDateFallback) {
  PdfWriter w;
  w.AddPage(595, 842, "");
  ExtractOptions options;
  options.file_name = "boe_2015-07-01.pdf";
  ASSERT_OK_AND_ASSIGN(const ParsedDocument doc,
                       ParseDocument(w.Finish(""), "s", options));
  EXPECT_EQ(doc.publication_date, absl::CivilDay(2015, 7, 1));
}

TEST(ParseDocumentTest, MalformedInputCarriesOffset) {
  const absl::StatusOr<ParsedDocument> doc =
      ParseDocument("%PDF-1.4\n1 0 obj << /Type /Catalog", "s");
  ASSERT_FALSE(doc.ok());
  EXPECT_EQ(doc.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_TRUE(ErrorByteOffset(doc.status()).has_value());
  EXPECT_FALSE(ParseDocument("", "s").ok());
  EXPECT_FALSE(ParseDocument("not a pdf at all", "s").ok());
}

TEST(ParseDocumentTest, EncryptedIsUnsupported) {
  std::string pdf = OneLinePdf("Times-Roman", "x");
  const size_t at = pdf.rfind("/Root");
  ASSERT_NE(at, std::string::npos);
  pdf.insert(at, "/Encrypt << /Filter /Standard >> ");
  const absl::StatusOr<ParsedDocument> doc = ParseDocument(pdf, "s");
  ASSERT_FALSE(doc.ok());
  EXPECT_TRUE(IsUnsupportedDocument(doc.status()));
}

TEST(ParseDocumentTest, BrokenContentStreamIsAPageWarning) {
  PdfWriter w(/*compress=*/false);
  const std::string f = w.AddFont({"Times-Roman"});
  w.AddPage(595, 842, "BT /" + f + " 12 Tf 72 700 Td (ok) Tj ET\n");
  w.AddPage(595, 842, "BT /Missing 12 Tf 72 700 Td (x) Tj ET [ ( <<\n");
  ASSERT_OK_AND_ASSIGN(const ParsedDocument doc,
                       ParseDocument(w.Finish(""), "s"));
  ASSERT_EQ(doc.pages.size(), 2u);
  EXPECT_EQ(doc.pages[0].spans.size(), 1u);
  EXPECT_FALSE(doc.pages[1].warnings.empty());
}

TEST(ParseDocumentTest, ReconstructsSpacelessWords) {
  PdfWriter w;
  const std::string f = w.AddFont({"Times-Roman"});
  w.AddPage(595, 842,
            "BT /" + f + " 10 Tf 72 700 Td " +
                eval::PdfString(eval::ToWinAnsi("Boletín")) + " Tj ET\n" +
                "BT /" + f + " 10 Tf 112 700 Td (Oficial) Tj ET\n");
  ExtractOptions options;
  options.reconstruct_words = true;
  ASSERT_OK_AND_ASSIGN(const ParsedDocument doc,
                       ParseDocument(w.Finish(""), "s", options));
  ASSERT_EQ(doc.pages[0].spans.size(), 1u);
  EXPECT_EQ(doc.pages[0].spans[0].text, "Boletín Oficial");
}

TEST(ParseDocumentTest, SyntheticDocumentMatchesManifestPages) {
  const eval::SynthDocument d =
      eval::GenerateDocument(eval::CleanTemplate(), 0, {});
  ASSERT_OK_AND_ASSIGN(const ParsedDocument doc, ParseDocument(d.pdf, "s"));
  ASSERT_EQ(static_cast<int>(doc.pages.size()), d.manifest.page_count);
  int links = 0;
  for (const eval::SynthBlock& b : d.manifest.blocks) {
    links += b.kind == BlockKind::kLink;
  }
  int got_links = 0;
  for (const ParsedPage& p : doc.pages) {
    got_links += static_cast<int>(p.link_blocks.size());
  }
  EXPECT_EQ(got_links, links);
}

TEST(DatesTest, PdfDates) {
  EXPECT_EQ(ParsePdfDate("D:20140102"), absl::CivilDay(2014, 1, 2));
  EXPECT_EQ(ParsePdfDate("D:20161231235959+01'00'"),
            absl::CivilDay(2016, 12, 31));
  EXPECT_FALSE(ParsePdfDate("yesterday").has_value());
  EXPECT_EQ(ParsePdfDate("D:2016"), absl::CivilDay(2016, 1, 1));
  EXPECT_FALSE(ParsePdfDate("D:20").has_value());
}

TEST(DatesTest, FileNameDates) {
  EXPECT_EQ(DateFromFileName("BOE-A-2019-03-05.pdf"),
            absl::CivilDay(2019, 3, 5));
  EXPECT_EQ(DateFromFileName("x_2019_03_05_y.pdf"), absl::CivilDay(2019, 3, 5));
  EXPECT_EQ(DateFromFileName("20190305.pdf"), absl::CivilDay(2019, 3, 5));
  EXPECT_FALSE(DateFromFileName("report.pdf").has_value());
}

}  // namespace
}  // namespace dla::pdf
