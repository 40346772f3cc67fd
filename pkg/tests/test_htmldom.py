from tablediff.htmldom import parse_html


def test_basic_tree_and_classes():
    root = parse_html('<div class="a b"><p>hi <b>there</b></p></div>')
    div = root.find_all("div")[0]
    assert div.classes() == {"a", "b"}
    assert "hi there" in div.text()


def test_stray_close_tags_ignored():
    root = parse_html("<p>one</p></div></table><p>two</p>")
    assert [p.text().strip() for p in root.find_all("p")] == ["one", "two"]


def test_unclosed_elements_close_implicitly():
    root = parse_html("<div><span>inner<p>deep</div><p>after</p>")
    paragraphs = root.find_all("p")
    assert len(paragraphs) == 2
    assert paragraphs[1].parent.tag == "#document"


def test_void_elements_take_no_children():
    root = parse_html("<p>a<br>b<img src='x'>c</p>")
    p = root.find_all("p")[0]
    assert p.text().replace(" ", "") == "abc"
    assert not root.find_all("br")[0].children


def test_entity_references_decoded():
    root = parse_html("<td>Tote&nbsp;/&nbsp;Besteigungen &amp; mehr</td>")
    assert root.find_all("td")[0].text() == "Tote / Besteigungen & mehr"


def test_has_ancestor_detects_nesting():
    root = parse_html("<table><tr><td><table><tr><td>x</td></tr></table></td></tr></table>")
    tables = root.find_all("table")
    assert len(tables) == 2
    assert not tables[0].has_ancestor("table")
    assert tables[1].has_ancestor("table")


def test_script_and_style_text_excluded():
    root = parse_html("<div><style>.x{}</style><script>var a;</script>visible</div>")
    assert root.find_all("div")[0].text().strip() == "visible"
