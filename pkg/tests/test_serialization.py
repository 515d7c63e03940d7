import json
from fractions import Fraction

import pytest

from monogamy_engine.errors.scenario_errors import InvalidExpressionError
from monogamy_engine.errors.serialization_errors import MalformedDocumentError
from monogamy_engine.monogamy.decomposition import Decomposition
from monogamy_engine.monogamy.decomposition_verifier import DecompositionVerifier
from monogamy_engine.serialization.json_codec import JsonCodec


@pytest.fixture
def codec() -> JsonCodec:
    return JsonCodec()


def test_scenario_document(codec, chsh_scenario):
    document = codec.encode_scenario(chsh_scenario)

    assert document['edges'] == [['A1', 'B1'], ['A1', 'B2'], ['A2', 'B1'], ['A2', 'B2']]
    assert document['observables'][0] == {'id' : 'A1', 'outcomes' : 2, 'party' : 'A', 'label' : None}
    assert codec.decode_scenario(document) == chsh_scenario


def test_contexts_are_made_jointly_measurable(codec):
    scenario = codec.decode_scenario({'observables' : [{'id' : 'X'}, {'id' : 'Y'}, {'id' : 'Z'}], 'contexts' : [['X', 'Y', 'Z']]})

    assert scenario.contexts == (('X', 'Y', 'Z'),)


def test_expression_document_uses_exact_rationals(codec, chsh):
    document = codec.encode_expression(chsh)

    assert document['sense'] == 'MAXIMIZE'
    assert document['terms'][3]['coefficient'] == '-1/1'
    assert document['terms'][0]['values'] == ['1/1', '-1/1', '-1/1', '1/1']
    assert codec.decode_expression(document, chsh.scenario) == chsh


@pytest.mark.parametrize('document', [
    {'terms' : [{'support' : ['A1', 'B1'], 'values' : [0.5, 0, 0, 0]}]},
    {'terms' : [{'support' : ['A1', 'B1'], 'values' : ['1/0', 0, 0, 0]}]},
    {'terms' : [{'values' : ['1', '0', '0', '0']}]},
    {'terms' : {}},
    {'sense' : 'UPWARDS', 'terms' : []},
])
def test_malformed_expressions(codec, chsh_scenario, document):
    with pytest.raises(MalformedDocumentError):
        codec.decode_expression(document, chsh_scenario)


def test_expression_must_fit_its_scenario(codec, chsh_scenario):
    with pytest.raises(InvalidExpressionError):
        codec.decode_expression({'terms' : [{'support' : ['A1', 'A2'], 'values' : ['1', '0', '0', '0']}]}, chsh_scenario)


def test_box_document(codec, pr_box):
    document = codec.encode_box(pr_box)

    assert document['contexts'][3] == {'observables' : ['A2', 'B2'], 'probabilities' : ['0/1', '1/2', '1/2', '0/1']}
    assert codec.decode_box(document, pr_box.scenario) == pr_box


def test_decomposition_without_assignment(codec, chsh):
    decomposition = codec.decode_decomposition({'parts' : [['A1', 'B1', 'B2'], ['A2', 'B1', 'B2']]}, chsh)

    assert decomposition.assignment == (0, 0, 1, 1)

    with pytest.raises(MalformedDocumentError):
        codec.decode_decomposition({'parts' : [['A1', 'B1', 'B2']]})


def test_certificate_can_be_checked_again(codec, chsh, config):
    decomposition = Decomposition.from_parts(chsh, (('A1', 'B1', 'B2'), ('A2', 'B1', 'B2')))
    certificate = DecompositionVerifier(config).verify_decomposition(chsh, decomposition)
    document = json.loads(codec.dumps(codec.encode_certificate(certificate)))

    expression, decoded, verdict, omega_c = codec.decode_certificate(document)

    assert document['verdict'] == verdict == 'FAILED'
    assert document['part_sum'] == '4/1'
    assert omega_c == Fraction(2)
    assert expression == chsh
    assert decoded == decomposition


def test_syntax_errors_report_their_location(codec, tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{\n  "observables": [,]\n}\n', encoding = 'utf-8')

    with pytest.raises(MalformedDocumentError) as error:
        codec.read(str(path))

    assert error.value.line == 2
    assert error.value.path == str(path)


def test_top_level_must_be_an_object(codec, tmp_path):
    path = tmp_path / 'list.json'
    path.write_text('[]', encoding = 'utf-8')

    with pytest.raises(MalformedDocumentError):
        codec.read(str(path))
