import pytest

from postdraft import draft
from postdraft.draft import (
    add_section,
    apply_edit,
    delete_section,
    export_markdown,
    generate_section,
    modify_text,
    move_section,
    render_preview,
    replay_generation_prompt,
    warm_start,
    word_count_total,
)
from postdraft.errors import UnknownIdError, ValidationError
from postdraft.gateway import CompletionGateway, DeterministicProvider, MockProvider
from postdraft.outline import toggle_bullet
from postdraft.prompts import SECTION_GUIDELINES, LengthKind, ModificationKind, SectionKind
from postdraft.serialize import workspace_to_dict, canonical_json


def make_clock(start=0.0):
    state = {"t": start}

    def clock():
        state["t"] += 1.0
        return state["t"]

    return clock


@pytest.fixture
def post(fixture_doc, det_gateway):
    return warm_start(fixture_doc, det_gateway, clock=make_clock(), post_id="t")


class TestWarmStart:
    def test_four_sections_in_order(self, post):
        assert [s.header for s in post.sections] == [
            "Introduction",
            "Methods",
            "Results",
            "Conclusion",
        ]
        assert all(s.body for s in post.sections)

    def test_guideline_defaults_prefilled(self, post):
        assert post.sections[0].workspace.custom_instructions == SECTION_GUIDELINES[
            SectionKind.INTRODUCTION
        ]
        assert post.sections[1].workspace.custom_instructions == SECTION_GUIDELINES[
            SectionKind.METHODS
        ]

    def test_results_prompt_contains_prior_sections(self, post):
        results = post.sections[2]
        prompt = results.workspace.generations[0].prompt
        assert post.sections[0].body in prompt
        assert post.sections[1].body in prompt

    def test_min_rule_selections(self, small_doc, det_gateway):
        post = warm_start(small_doc, det_gateway, clock=make_clock())
        for section in post.sections:
            assert len(section.workspace.selection.selected_bullets) == 6

    def test_each_selection_capped_at_ten(self, post):
        for section in post.sections:
            assert len(section.workspace.selection.selected_bullets) == 10

    def test_provider_failure_leaves_partial_draft(self, fixture_doc):
        # outline and selection prompts succeed; generation always fails
        from postdraft.errors import TransientProviderError

        det = DeterministicProvider()

        class FailGeneration:
            provider_id = "failing"

            def complete(self, req):
                if req.purpose_tag == "generation":
                    raise TransientProviderError("down")
                return det.complete(req)

        gw = CompletionGateway(FailGeneration(), retries=1, sleep=lambda s: None)
        post = warm_start(fixture_doc, gw, clock=make_clock())
        assert len(post.sections) == 4
        assert all(s.body == "" for s in post.sections)
        assert all(s.degraded for s in post.sections)


class TestGenerateSection:
    def test_snapshot_reflects_toggled_selection(self, post, det_gateway):
        section = post.sections[0]
        bid = sorted(section.workspace.selection.selected_bullets)[0]
        section.workspace.selection = toggle_bullet(
            post.outline, section.workspace.selection, bid
        )
        record = generate_section(post, section.section_id, det_gateway, clock=make_clock())
        assert bid not in record.inputs["selected_bullets"]

    def test_history_grows_and_body_untouched(self, post, det_gateway):
        section = post.sections[0]
        body_before = section.body
        generate_section(post, section.section_id, det_gateway, clock=make_clock())
        generate_section(post, section.section_id, det_gateway, clock=make_clock())
        # one warm-start generation plus two manual ones
        assert len(section.workspace.generations) == 3
        assert section.body == body_before

    def test_context_toggle_off_drops_prior(self, post, det_gateway):
        section = post.sections[2]
        section.workspace.context_toggle = False
        record = generate_section(post, section.section_id, det_gateway, clock=make_clock())
        assert post.sections[0].body not in record.prompt

    def test_record_replays_to_identical_prompt(self, post, det_gateway):
        section = post.sections[1]
        record = generate_section(post, section.section_id, det_gateway, clock=make_clock())
        assert replay_generation_prompt(post, record) == record.prompt

    def test_unknown_section(self, post, det_gateway):
        with pytest.raises(UnknownIdError):
            generate_section(post, "nope", det_gateway)


class TestAddMoveDelete:
    def test_add_shifts_positions(self, post, det_gateway):
        intro_id = post.sections[0].section_id
        methods_id = post.sections[1].section_id
        section = add_section(post, intro_id, "Background", "blank")
        assert post.position(section.section_id) == 1
        assert post.position(methods_id) == 2

    def test_blank_mode_empty_workspace(self, post):
        section = add_section(post, post.sections[0].section_id, "Background", "blank")
        assert section.body == ""
        assert section.workspace.selection.selected_bullets == frozenset()
        assert section.workspace.generations == []

    def test_generated_mode_min_rule(self, small_doc, det_gateway):
        post = warm_start(small_doc, det_gateway, clock=make_clock())
        section = add_section(
            post, post.sections[-1].section_id, "Call to Action", "generated",
            gateway=det_gateway, clock=make_clock(),
        )
        assert len(section.workspace.selection.selected_bullets) == 6
        assert section.body == ""
        assert len(section.workspace.generations) == 1

    def test_empty_header_rejected(self, post, det_gateway):
        with pytest.raises(ValidationError):
            add_section(post, post.sections[0].section_id, "  ", "generated",
                        gateway=det_gateway)

    def test_move_and_permutation(self, post):
        ids = [s.section_id for s in post.sections]
        assert move_section(post, ids[0], "down")
        assert [s.section_id for s in post.sections] == [ids[1], ids[0], ids[2], ids[3]]
        assert move_section(post, ids[0], "up")
        assert [s.section_id for s in post.sections] == ids

    def test_move_out_of_range_is_noop(self, post):
        ids = [s.section_id for s in post.sections]
        assert not move_section(post, ids[0], "up")
        assert not move_section(post, ids[-1], "down")
        assert [s.section_id for s in post.sections] == ids

    def test_delete(self, post):
        ids = [s.section_id for s in post.sections]
        delete_section(post, ids[1])
        assert [s.section_id for s in post.sections] == [ids[0], ids[2], ids[3]]


class TestModifyText:
    def test_expand_record(self, post, det_gateway):
        record = modify_text(
            post, post.sections[0].section_id, ModificationKind.EXPAND,
            "some draft text", gateway=det_gateway, clock=make_clock(),
        )
        assert record.kind == "expand"
        assert record.output
        assert post.sections[0].workspace.modifications == [record]

    def test_custom_requires_instructions(self, post, det_gateway):
        with pytest.raises(ValidationError):
            modify_text(
                post, post.sections[0].section_id, ModificationKind.CUSTOM,
                "text", gateway=det_gateway,
            )

    def test_empty_text_rejected_before_provider(self, post):
        provider = MockProvider()
        gw = CompletionGateway(provider, sleep=lambda s: None)
        with pytest.raises(ValidationError):
            modify_text(
                post, post.sections[0].section_id, ModificationKind.EXPAND, "",
                gateway=gw,
            )
        assert provider.calls == []

    def test_grounding_toggle_on_includes_paragraphs(self, post, det_gateway):
        section = post.sections[0]
        record = modify_text(
            post, section.section_id, ModificationKind.CONDENSE, "text",
            gateway=det_gateway, clock=make_clock(),
        )
        bid = sorted(section.workspace.selection.selected_bullets)[0]
        para = post.doc.paragraph(post.outline.bullet(bid).para_id)
        assert para.text in record.prompt

    def test_body_untouched(self, post, det_gateway):
        section = post.sections[0]
        before = section.body
        modify_text(post, section.section_id, ModificationKind.CONDENSE, "text",
                    gateway=det_gateway, clock=make_clock())
        assert section.body == before


class TestApplyEdit:
    def test_insert(self, post):
        section = post.sections[0]
        section.body = "abc"
        payload = apply_edit(post, section.section_id, {"op": "insert", "pos": 0, "text": "x"})
        assert section.body == "xabc"
        assert payload["op"] == "insert"

    def test_delete_whole_body(self, post):
        section = post.sections[0]
        n = len(section.body)
        apply_edit(post, section.section_id, {"op": "delete", "start": 0, "end": n})
        assert section.body == ""

    def test_paste_is_one_action(self, post):
        section = post.sections[0]
        section.body = ""
        payload = apply_edit(
            post, section.section_id, {"op": "insert", "pos": 0, "text": "y" * 500}
        )
        assert section.body == "y" * 500
        assert isinstance(payload, dict)  # a single payload, not 500

    def test_out_of_bounds(self, post):
        section = post.sections[0]
        with pytest.raises(ValidationError):
            apply_edit(post, section.section_id,
                       {"op": "insert", "pos": len(section.body) + 1, "text": "x"})
        with pytest.raises(ValidationError):
            apply_edit(post, section.section_id,
                       {"op": "delete", "start": 0, "end": len(section.body) + 1})


class TestSectionIsolation:
    def test_operations_on_a_leave_b_byte_identical(self, post, det_gateway):
        a = post.sections[0].section_id
        b_ws = post.sections[1].workspace
        before = canonical_json(workspace_to_dict(b_ws))
        clock = make_clock(100.0)
        for _ in range(3):
            generate_section(post, a, det_gateway, clock=clock)
        modify_text(post, a, ModificationKind.EXPAND, "t", gateway=det_gateway, clock=clock)
        apply_edit(post, a, {"op": "insert", "pos": 0, "text": "hello "})
        post.sections[0].workspace.custom_bullets = "- extra"
        assert canonical_json(workspace_to_dict(b_ws)) == before


class TestPreview:
    def test_word_count_and_preview(self, post):
        preview = render_preview(post)
        for section in post.sections:
            assert f"## {section.header}" in preview
            assert section.body in preview
        assert word_count_total(post) == sum(
            len(s.body.split()) for s in post.sections
        )

    def test_export_markdown_has_title(self, post):
        md = export_markdown(post)
        assert md.startswith(f"# {post.title}\n\n## Introduction")

    def test_histories_never_shrink(self, post, det_gateway):
        section = post.sections[0]
        lengths = [len(section.workspace.generations)]
        for _ in range(3):
            generate_section(post, section.section_id, det_gateway, clock=make_clock())
            lengths.append(len(section.workspace.generations))
        assert lengths == sorted(lengths)
