from django.core.management.base import CommandError
from django.test import SimpleTestCase

from apps.shared.exceptions.custom_exceptions import CustomException
from apps.shared.exceptions.handler import command_exception_handler
from apps.shared.exceptions.translator import get_message_detail
from apps.shared.messages import MESSAGES, _merge


class TranslatorTestCase(SimpleTestCase):
    def test_formats_context(self):
        detail = get_message_detail("RATE_NOT_INTEGRAL", {'NR': 1.5})
        self.assertEqual(detail['id'], "RATE_NOT_INTEGRAL")
        self.assertIn('1.5', detail['message'])
        self.assertEqual(detail['exit_code'], 2)

    def test_unknown_key_falls_back(self):
        self.assertEqual(get_message_detail("NO_SUCH_KEY")['id'], "UNKNOWN_ERROR")

    def test_missing_context_keeps_template(self):
        detail = get_message_detail("NEGATIVE_SNR")
        self.assertIn('{gamma}', detail['message'])

    def test_exit_codes_are_known(self):
        for key, message in MESSAGES.items():
            self.assertEqual(message['id'], key)
            self.assertIn(message['exit_code'], (1, 2, 3, 4))

    def test_duplicate_keys_rejected(self):
        entry = {"id": "X", "message": "x", "exit_code": 2}
        with self.assertRaises(ValueError):
            _merge([("a", {"X": entry}), ("b", {"X": entry})])

    def test_exception_renders_its_message(self):
        self.assertEqual(str(CustomException("EMPTY_CHAIN")), "A cascade needs at least one hop matrix")


class CommandExceptionHandlerTestCase(SimpleTestCase):
    def test_custom_exception_carries_exit_code(self):
        error = command_exception_handler(CustomException("NON_CONVERGENT_QUADRATURE", {'tol': 1e-10, 'achieved': 1e-6}), {'command': 'bound'})
        self.assertIsInstance(error, CommandError)
        self.assertEqual(error.returncode, 3)
        self.assertTrue(str(error).startswith("NON_CONVERGENT_QUADRATURE: "))

    def test_self_test_failure(self):
        error = command_exception_handler(CustomException("CHECKS_FAILED", {'failed': 1, 'total': 2, 'names': 'x'}), {})
        self.assertEqual(error.returncode, 4)

    def test_command_error_passes_through(self):
        original = CommandError("bad flag", returncode=2)
        self.assertIs(command_exception_handler(original, {}), original)

    def test_unknown_exception(self):
        with self.assertLogs('apps.shared.exceptions.handler', level='ERROR'):
            error = command_exception_handler(ZeroDivisionError("boom"), {'command': 'verify'})
        self.assertEqual(error.returncode, 1)
        self.assertIn('ZeroDivisionError: boom', str(error))
