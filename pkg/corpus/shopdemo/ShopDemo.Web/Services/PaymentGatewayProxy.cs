using System;

namespace ShopDemo.Web.Services
{
    // Generated SOAP proxy stub; the real service lives on the payment host.
    public class PaymentGatewayProxy : SoapHttpClientProtocol
    {
        public bool Charge(decimal amount)
        {
            return true;
        }

        public string Ping()
        {
            return "pong";
        }
    }
}
